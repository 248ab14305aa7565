#include "qbm/finite_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include <boost/math/tools/roots.hpp>

#include "qbm/errors.hpp"

namespace qbm {

namespace {

cplx log_det(const Eigen::PartialPivLU<Eigen::MatrixXcd>& lu) {
    cplx acc = 0.0;
    for (Eigen::Index i = 0; i < lu.matrixLU().rows(); ++i) acc += std::log(lu.matrixLU()(i, i));
    if (lu.permutationP().determinant() < 0) acc += cplx(0.0, kPi);
    return acc;
}

// ln(2 sinh(x)) for x > 0
double log_two_sinh(double x) { return x + std::log1p(-std::exp(-2.0 * x)); }

}  // namespace

Eigen::MatrixXd reflect_minor(const Eigen::MatrixXd& m) {
    const Eigen::Index n = m.rows();
    Eigen::MatrixXd out(m.cols(), n);
    for (Eigen::Index i = 0; i < out.rows(); ++i)
        for (Eigen::Index j = 0; j < out.cols(); ++j) out(i, j) = m(n - 1 - j, m.cols() - 1 - i);
    return out;
}

Eigen::MatrixXd reflect_major(const Eigen::MatrixXd& m) {
    Eigen::MatrixXd out(m.cols(), m.rows());
    for (Eigen::Index i = 0; i < out.rows(); ++i)
        for (Eigen::Index j = 0; j < out.cols(); ++j) out(i, j) = m(j, i);
    return out;
}

Eigen::MatrixXd Generator::block() const {
    const Eigen::Index n = D.rows();
    Eigen::MatrixXd g(2 * n, 2 * n);
    g << D, R, -R_reflected(), -D_reflected();
    return g;
}

Generator build_generator(const ModeList& modes, double beta) {
    modes.validate();
    if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
    const Eigen::Index kc = static_cast<Eigen::Index>(modes.size());
    const Eigen::Index n = kc + 1;
    Generator gen;
    gen.beta = beta;
    gen.D = Eigen::MatrixXd::Zero(n, n);
    gen.R = Eigen::MatrixXd::Zero(n, n);
    gen.D(0, 0) = kSystemFrequency;
    for (Eigen::Index k = 1; k <= kc; ++k) {
        const double v = modes.coupling[k - 1];
        gen.D(0, k) = v;
        gen.D(k, 0) = v;
        gen.D(k, k) = modes.frequency[k - 1];
        gen.R(0, kc - k) = v;  // reversed coupling row
        gen.R(k, n - 1) = v;   // coupling column
    }
    gen.D *= -beta;
    gen.R *= -beta;
    return gen;
}

GaussianChart faithful_step(const Generator& gen) {
    const Eigen::Index n = gen.D.rows();
    const Eigen::MatrixXd e = expm(gen.block());
    const Eigen::MatrixXd e22 = e.bottomRightCorner(n, n);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(e22);
    if (lu.rcond() < 1e-14) fail(ErrorKind::SingularBlock, "lower-right block of the exponential is singular");
    const Eigen::MatrixXd inv = lu.inverse();
    const Eigen::MatrixXd upper = e.topRightCorner(n, n) * inv;

    GaussianChart c;
    c.omega = reflect_minor(inv);
    c.create.resize(n, n);
    for (Eigen::Index j = 0; j < n; ++j) c.create.col(j) = upper.col(n - 1 - j);
    c.create = 0.5 * (c.create + c.create.transpose()).eval();
    c.annihilate = c.create;
    double log_det_e22 = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) log_det_e22 += std::log(std::abs(lu.matrixLU()(i, i)));
    c.log_prefactor = -0.5 * log_det_e22;
    return c;
}

TotalGaussian total_gaussian(const Generator& gen) {
    const double norm = gen.block().cwiseAbs().colwise().sum().maxCoeff();
    int squarings = 0;
    if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    Generator step = gen;
    const double scale = std::ldexp(1.0, -squarings);
    step.D *= scale;
    step.R *= scale;
    step.beta *= scale;

    GaussianChart chart = faithful_step(step);
    for (int i = 0; i < squarings; ++i) chart = compose(chart, chart);

    TotalGaussian tg;
    tg.omega = chart.omega.cast<cplx>();
    tg.pair = chart.create.cast<cplx>();
    tg.log_sqrt_det_omega = chart.log_prefactor;
    tg.log_z_total = log_trace(chart);
    return tg;
}

PartialTrace gaussian_partial_trace(const TotalGaussian& tg) {
    const Eigen::Index n = tg.dim();
    PartialTrace out;
    out.kernel = {tg.omega(0, 0), tg.pair(0, 0)};
    if (n == 1) return out;
    const Eigen::Index m = n - 1;

    const Eigen::MatrixXcd oee = tg.omega.bottomRightCorner(m, m);
    const Eigen::MatrixXcd pee = tg.pair.bottomRightCorner(m, m);
    Eigen::MatrixXcd a(2 * m, 2 * m);
    a << oee, pee, pee.conjugate(), oee.conjugate();
    const Eigen::MatrixXcd ose = tg.omega.topRightCorner(1, m), pse = tg.pair.topRightCorner(1, m);
    const Eigen::MatrixXcd oes = tg.omega.bottomLeftCorner(m, 1), pes = tg.pair.bottomLeftCorner(m, 1);
    Eigen::MatrixXcd left(2, 2 * m), right(2 * m, 2);
    left << ose, pse, pse.conjugate(), ose.conjugate();
    right << oes, pes, pes.conjugate(), oes.conjugate();

    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(Eigen::MatrixXcd::Identity(2 * m, 2 * m) - a);
    if (lu.rcond() < 1e-14) fail(ErrorKind::NonTraceable, "1 - W_EE is singular");
    const cplx ld = log_det(lu);
    if (std::abs(std::remainder(ld.imag(), 2.0 * kPi)) > 1e-6)
        fail(ErrorKind::NonTraceable, "1 - W_EE has a non-positive determinant");
    const Eigen::MatrixXcd correction = left * lu.solve(right);

    out.kernel.omega = tg.omega(0, 0) + correction(0, 0);
    out.kernel.pair = tg.pair(0, 0) + correction(0, 1);
    out.log_norm_factor = 0.5 * ld.real();
    out.norm_factor = std::exp(out.log_norm_factor);
    return out;
}

std::vector<double> normal_mode_frequencies(const ModeList& modes) {
    modes.validate();
    // Stiffness matrix [[omega_S^2, z],[z^T, diag omega_k^2]] with z_k = 2 V_k sqrt(omega_S omega_k).
    // Its eigenvalues interlace the bath poles and solve the secular equation
    // f(x) = omega_S^2 - x - sum z_k^2 / (d_k - x), each bracketed between neighbouring poles.
    const double k00 = kSystemFrequency * kSystemFrequency;
    std::vector<double> out, d, z2;
    for (std::size_t j = 0; j < modes.size(); ++j) {
        const double w = modes.frequency[j];
        const double z = 2.0 * modes.coupling[j] * std::sqrt(kSystemFrequency * w);
        if (z == 0.0) {
            out.push_back(w);
        } else {
            d.push_back(w * w);
            z2.push_back(z * z);
        }
    }
    double f0 = k00;
    for (std::size_t j = 0; j < d.size(); ++j) f0 -= z2[j] / d[j];
    if (!(f0 > 0.0))
        fail(ErrorKind::InvertedPotential, "stiffness matrix has a nonpositive eigenvalue (secular value at 0 is " +
                                               std::to_string(f0) + ")");
    if (d.empty()) {
        out.push_back(kSystemFrequency);
        std::sort(out.begin(), out.end());
        return out;
    }

    double gersh = k00;
    for (std::size_t j = 0; j < d.size(); ++j) gersh = std::max({gersh, k00 + std::sqrt(z2[j]) * d.size(), d[j] + std::sqrt(z2[j])});

    std::vector<double> shifted(d.size());
    const auto root_between = [&](double lo, double hi) {
        // Shift the origin to the nearer end so the root keeps relative accuracy near a pole.
        auto secular = [&](double origin, double mu) {
            double f = k00 - origin - mu;
            for (std::size_t j = 0; j < d.size(); ++j) f -= z2[j] / (shifted[j] - mu);
            return f;
        };
        auto set_origin = [&](double origin) {
            for (std::size_t j = 0; j < d.size(); ++j) shifted[j] = d[j] - origin;
        };
        double origin = lo;
        if (std::isfinite(hi)) {
            set_origin(lo);
            if (secular(lo, 0.5 * (hi - lo)) > 0.0) origin = hi;
        }
        set_origin(origin);
        double a = lo - origin, b = (std::isfinite(hi) ? hi : gersh) - origin;
        const double span = b - a;
        // Bracket ends sit on poles; nudge inward.
        auto fa = secular(origin, a), fb = secular(origin, b);
        for (int i = 0; i < 60 && !(fa > 0.0 && std::isfinite(fa)); ++i) fa = secular(origin, a = a + span * std::ldexp(1.0, -60 + i));
        for (int i = 0; i < 60 && !(fb < 0.0 && std::isfinite(fb)); ++i) fb = secular(origin, b = b - span * std::ldexp(1.0, -60 + i));
        if (!(fa > 0.0) || !(fb < 0.0)) return origin + 0.5 * (a + b);
        std::uintmax_t iters = 200;
        const auto r = boost::math::tools::toms748_solve([&](double mu) { return secular(origin, mu); }, a, b, fa, fb,
                                                         boost::math::tools::eps_tolerance<double>(50), iters);
        return origin + 0.5 * (r.first + r.second);
    };

    out.push_back(std::sqrt(root_between(0.0, d.front())));
    for (std::size_t j = 0; j + 1 < d.size(); ++j) out.push_back(std::sqrt(root_between(d[j], d[j + 1])));
    out.push_back(std::sqrt(root_between(d.back(), std::numeric_limits<double>::infinity())));
    std::sort(out.begin(), out.end());
    return out;
}

double log_partition_total(const ModeList& modes, double beta) {
    double acc = 0.0;
    for (double w : normal_mode_frequencies(modes)) acc -= log_two_sinh(0.5 * beta * w);
    return acc;
}

double log_partition_env(const ModeList& modes, double beta) {
    double acc = 0.0;
    for (double w : modes.frequency) acc -= log_two_sinh(0.5 * beta * w);
    return acc;
}

double reduced_partition(const Moments& m) {
    const double v = m.n * m.n + m.n - std::norm(m.s);
    if (!(v > 1e-300)) fail(ErrorKind::ZeroTemperature, "n^2 + n - |s|^2 is not positive");
    return std::sqrt(v);
}

double log_reduced_partition_from_total(const TotalGaussian& tg, const PartialTrace& pt) {
    return tg.log_z_total + 0.5 * std::log(pt.kernel.omega.real()) - tg.log_sqrt_det_omega + pt.log_norm_factor;
}

FiniteState finite_oracle_state(const ModeList& modes, double beta) {
    normal_mode_frequencies(modes);
    const TotalGaussian tg = total_gaussian(build_generator(modes, beta));
    const PartialTrace pt = gaussian_partial_trace(tg);
    FiniteState st;
    st.kernel = pt.kernel;
    st.moments = kernel_to_moments(pt.kernel);
    st.log_z_total = tg.log_z_total;
    st.log_z_reduced = log_reduced_partition_from_total(tg, pt);
    return st;
}

GaussianIntegral generalized_gaussian_integral(const Eigen::MatrixXcd& theta, const Eigen::MatrixXcd& create,
                                               const Eigen::MatrixXcd& annihilate) {
    const Eigen::Index n = theta.rows();
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu_t(id - theta.transpose());
    if (lu_t.rcond() < 1e-14) fail(ErrorKind::NonTraceable, "1 - Theta is singular");
    const Eigen::MatrixXcd bt = lu_t.inverse();  // (1 - Theta^T)^{-1}
    const Eigen::MatrixXcd phi = theta + create * bt * annihilate;
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu_p(id - phi);
    if (lu_p.rcond() < 1e-14) fail(ErrorKind::NonTraceable, "1 - Phi is singular");
    const Eigen::MatrixXcd cp = lu_p.inverse();  // (1 - Phi)^{-1}

    GaussianIntegral out;
    out.log_det_factor = -0.5 * (log_det(lu_t) + log_det(lu_p));
    out.exponent.resize(2 * n, 2 * n);
    out.exponent.topLeftCorner(n, n) = cp;
    out.exponent.topRightCorner(n, n) = cp * create * bt;
    out.exponent.bottomLeftCorner(n, n) = bt * annihilate * cp;
    out.exponent.bottomRightCorner(n, n) = bt + bt * annihilate * cp * create * bt;
    return out;
}

}  // namespace qbm
