#pragma once

// Full reduced-state evaluation at one (Gamma, T) point.

#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "qbm/continuum_solver.hpp"
#include "qbm/errors.hpp"
#include "qbm/gibbs_state.hpp"

namespace qbm {

struct StatePoint {
    double gamma = 0.0;
    double temperature = 0.0;
    GaussianKernel kernel;
    Moments moments;
    ReducedHamiltonian hamiltonian;
    BogoliubovFrame frame;
    double quasiparticle_occupation = 0.0;
    double z_reduced = 0.0;
};

StatePoint evaluate_state(const SpectralConfig& cfg, double temperature, const SolverOptions& opt = {});

// Evaluates fn(i) for i in [0, n) on a small thread pool; results keep index order.
template <class T>
std::vector<T> parallel_map(std::size_t n, const std::function<T(std::size_t)>& fn) {
    std::vector<T> out(n);
    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(n, std::thread::hardware_concurrency()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += workers) out[i] = fn(i);
        });
    for (auto& t : pool) t.join();
    return out;
}

}  // namespace qbm
