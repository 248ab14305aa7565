#include "qbm/pipeline.hpp"

#include "qbm/finite_oracle.hpp"

namespace qbm {

StatePoint evaluate_state(const SpectralConfig& cfg, double temperature, const SolverOptions& opt) {
    if (!(temperature > 0.0)) throw std::invalid_argument("temperature must be positive");
    StatePoint p;
    p.gamma = cfg.coupling;
    p.temperature = temperature;
    p.kernel = solve_kernel(cfg, 1.0 / temperature, opt);
    p.moments = kernel_to_moments(p.kernel);
    p.hamiltonian = reduced_hamiltonian(p.moments, temperature);
    p.frame = bogoliubov(p.hamiltonian);
    p.quasiparticle_occupation = qbm::quasiparticle_occupation(p.moments);
    p.z_reduced = reduced_partition(p.moments);
    return p;
}

}  // namespace qbm
