// Truncated Fock-space diagonalization of the discretized model.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qbm/errors.hpp"
#include "qbm/finite_oracle.hpp"

namespace qbm {

namespace {

using Occupation = std::vector<int>;

struct Block {
    std::vector<Occupation> states;
    std::map<Occupation, Eigen::Index> index;
};

struct FockRun {
    Moments moments;
    double log_z_total = 0.0;
    double log_z_reduced = 0.0;
};

void enumerate(const std::vector<double>& freq, double cap, int n_max, std::size_t mode, Occupation& occ,
               double energy, std::vector<Occupation>& out) {
    if (mode == freq.size()) {
        out.push_back(occ);
        return;
    }
    for (int k = 0; k <= n_max; ++k) {
        const double e = energy + k * freq[mode];
        if (e > cap + 1e-12) break;
        occ[mode] = k;
        enumerate(freq, cap, n_max, mode + 1, occ, e, out);
    }
    occ[mode] = 0;
}

FockRun diagonalize(const ModeList& modes, double beta, int n_max) {
    std::vector<double> freq{kSystemFrequency};
    freq.insert(freq.end(), modes.frequency.begin(), modes.frequency.end());
    std::vector<Occupation> all;
    Occupation occ(freq.size(), 0);
    // Bare-energy cap: thermal weight beyond it is below e^{-0.6 n_max}, and never under n_max / 2
    // quanta of the system mode so that coupling-induced admixtures stay resolved.
    const double cap = std::clamp(0.6 / (beta * kSystemFrequency), 0.5, 1.0) * n_max * kSystemFrequency;
    enumerate(freq, cap, n_max, 0, occ, 0.0, all);

    Block blocks[2];
    for (const auto& st : all) {
        int total = 0;
        for (int k : st) total += k;
        Block& b = blocks[total % 2];
        b.index[st] = static_cast<Eigen::Index>(b.states.size());
        b.states.push_back(st);
    }

    double zero_point = 0.0;
    for (double w : freq) zero_point += 0.5 * w;

    struct Spectrum {
        Eigen::VectorXd energy;
        Eigen::MatrixXd vectors;
    };
    Spectrum spec[2];
    double e_min = std::numeric_limits<double>::infinity();
    for (int p = 0; p < 2; ++p) {
        const Block& b = blocks[p];
        const Eigen::Index dim = static_cast<Eigen::Index>(b.states.size());
        Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
        for (Eigen::Index i = 0; i < dim; ++i) {
            const Occupation& st = b.states[i];
            for (std::size_t m = 0; m < freq.size(); ++m) h(i, i) += freq[m] * st[m];
            // V_k (a + a^dag)(b_k + b_k^dag), upper triangle via raising the system mode or lowering it
            for (std::size_t k = 1; k < freq.size(); ++k) {
                const double v = modes.coupling[k - 1];
                for (int ds : {+1, -1}) {
                    for (int db : {+1, -1}) {
                        Occupation to = st;
                        to[0] += ds;
                        to[k] += db;
                        if (to[0] < 0 || to[k] < 0) continue;
                        auto it = b.index.find(to);
                        if (it == b.index.end()) continue;
                        const double as = ds > 0 ? std::sqrt(st[0] + 1.0) : std::sqrt(double(st[0]));
                        const double ab = db > 0 ? std::sqrt(st[k] + 1.0) : std::sqrt(double(st[k]));
                        h(it->second, i) += v * as * ab;
                    }
                }
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
        spec[p].energy = es.eigenvalues().array() + zero_point;
        spec[p].vectors = es.eigenvectors();
        if (dim > 0) e_min = std::min(e_min, spec[p].energy.minCoeff());
    }

    double zsum = 0.0;
    for (int p = 0; p < 2; ++p) zsum += (-beta * (spec[p].energy.array() - e_min)).exp().sum();
    const double log_z = -beta * e_min + std::log(zsum);

    Eigen::MatrixXd rho_s = Eigen::MatrixXd::Zero(n_max + 1, n_max + 1);
    double n = 0.0, s = 0.0;
    for (int p = 0; p < 2; ++p) {
        const Block& b = blocks[p];
        const Eigen::VectorXd w = (-0.5 * (beta * spec[p].energy.array() + log_z)).exp();
        const Eigen::MatrixXd weighted = spec[p].vectors * w.asDiagonal();
        const Eigen::MatrixXd rho = weighted * weighted.transpose();
        for (Eigen::Index i = 0; i < rho.rows(); ++i) {
            const Occupation& st = b.states[i];
            n += st[0] * rho(i, i);
            if (st[0] >= 2) {
                Occupation lower = st;
                lower[0] -= 2;
                auto it = b.index.find(lower);
                if (it != b.index.end()) s += std::sqrt(st[0] * (st[0] - 1.0)) * rho(it->second, i);
            }
            // reduced state: same environment, all system occupations of this parity
            for (int m2 = st[0] % 2; m2 <= n_max; m2 += 2) {
                Occupation other = st;
                other[0] = m2;
                auto it = b.index.find(other);
                if (it != b.index.end()) rho_s(st[0], m2) += rho(i, it->second);
            }
        }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(rho_s, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd lam = es.eigenvalues();
    const double l0 = lam(lam.size() - 1), l1 = lam(lam.size() - 2);

    FockRun out;
    out.moments = {n, cplx(s, 0.0)};
    out.log_z_total = log_z;
    out.log_z_reduced = -std::log(l0) - 0.5 * std::log(l0 / l1);
    return out;
}

}  // namespace

FockResult fock_oracle(const ModeList& modes, double beta, int n_max) {
    modes.validate();
    if (modes.size() < 1 || modes.size() > 2) throw std::invalid_argument("Fock oracle supports k_c in {1, 2}");
    if (n_max < 40) throw std::invalid_argument("Fock oracle requires n_max >= 40");
    if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");

    const FockRun coarse = diagonalize(modes, beta, n_max);
    const FockRun fine = diagonalize(modes, beta, n_max + 10);
    const double est = std::max({std::abs(coarse.moments.n - fine.moments.n),
                                 std::abs(coarse.moments.s - fine.moments.s),
                                 std::abs(coarse.log_z_total - fine.log_z_total),
                                 std::abs(coarse.log_z_reduced - fine.log_z_reduced)});
    if (!(est <= 1e-5))
        fail(ErrorKind::TruncationError, "Fock truncation sensitivity " + std::to_string(est) + " exceeds 1e-5");
    return {fine.moments, fine.log_z_total, fine.log_z_reduced, est};
}

}  // namespace qbm
