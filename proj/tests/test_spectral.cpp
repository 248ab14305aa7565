#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "qbm/spectral.hpp"
#include "test_util.hpp"

using namespace qbm;

namespace {
const SpectralConfig kRef{0.5, 20.0};

double bose_weight(double beta, double w) {
    if (w == 0.0) return 1.0 / beta;  // J(w)/(e^{beta w}-1) -> Gamma/beta handled by caller
    return 1.0 / std::expm1(beta * w);
}
}  // namespace

TEST_CASE("spectral density values") {
    CHECK(eval_spectral_density({0.0, 20.0}, 3.7) == 0.0);
    CHECK(eval_spectral_density(kRef, 0.0) == 0.0);
    CHECK(eval_spectral_density(kRef, 1.0) == doctest::Approx(0.5 * 400.0 / 401.0).epsilon(1e-14));
    // single interior maximum at the cutoff
    const double peak = eval_spectral_density(kRef, 20.0);
    for (double w : {1.0, 10.0, 19.0, 21.0, 40.0, 400.0}) CHECK(eval_spectral_density(kRef, w) < peak);
    CHECK(static_susceptibility(kRef) == doctest::Approx(10.0));
}

TEST_CASE("static susceptibility matches (2/pi) int J/w") {
    const SpectralConfig c{0.03, 7.0};
    auto f = [&](double w) { return w == 0.0 ? c.coupling : eval_spectral_density(c, w) / w; };
    const double integral =
        simpson([&](long n) { return oracle::half_line(f, c.cutoff, n); }, 200000) * 2.0 / oracle::pi;
    CHECK(static_susceptibility(c) == doctest::Approx(integral).epsilon(1e-8));
}

TEST_CASE("kernel_g against brute-force trapezoid") {
    CHECK(kernel_g({0.0, 20.0}, 0.7) == 0.0);
    auto f = [&](double w) { return eval_spectral_density(kRef, w) * std::exp(-w) / (2.0 * oracle::pi); };
    const double ref = simpson([&](long n) { return oracle::trapezoid(f, 0.0, 80.0, n); }, 500000);
    CHECK(rel_diff(kernel_g(kRef, 1.0), ref) < 1e-8);
    double prev = kernel_g(kRef, 0.05);
    for (double tau : {0.1, 0.5, 1.0, 3.0, 10.0}) {
        const double g = kernel_g(kRef, tau);
        CHECK(g > 0.0);
        CHECK(g < prev);
        prev = g;
    }
    CHECK_KIND(kernel_g(kRef, 0.0), ErrorKind::DivergentKernel);
    CHECK_KIND(kernel_g(kRef, -1.0), ErrorKind::DivergentKernel);
}

TEST_CASE("kernel_g_prime against brute-force trapezoid") {
    CHECK(kernel_g_prime({0.0, 20.0}, 1.0, 0.3) == 0.0);
    const double beta = 0.1;
    auto f = [&](double w) {
        if (w == 0.0) return kRef.coupling / (beta * 2.0 * oracle::pi);
        return eval_spectral_density(kRef, w) * bose_weight(beta, w) / (2.0 * oracle::pi);
    };
    const double ref = simpson([&](long n) { return oracle::trapezoid(f, 0.0, 600.0, n); }, 1000000);
    CHECK(rel_diff(kernel_g_prime(kRef, beta, 0.0), ref) < 1e-8);
    CHECK(kernel_g_prime(kRef, 1.0, 0.5) > 0.0);
    CHECK(kernel_g_prime(kRef, 1.0, -0.5) > kernel_g_prime(kRef, 1.0, 0.5));
    CHECK_KIND(kernel_g_prime(kRef, 1.0, -1.0), ErrorKind::DivergentKernel);
}

TEST_CASE("self_energy: closed form, quadrature and oracle") {
    CHECK(self_energy({0.0, 20.0}, cplx(2.0, 3.0)) == cplx(0.0));
    auto f = [&](double w) { return eval_spectral_density(kRef, w) / (5.0 + w) / (2.0 * oracle::pi); };
    const double ref = simpson([&](long n) { return oracle::half_line(f, 20.0, n); }, 1000000);
    const cplx s5 = self_energy(kRef, 5.0);
    CHECK(s5.imag() == 0.0);
    CHECK(s5.real() > 0.0);
    CHECK(rel_diff(s5.real(), ref) < 1e-9);
    for (cplx s : {cplx(5.0, 0.0), cplx(2.0, 1.0), cplx(-3.0, 0.5), cplx(0.1, -40.0)}) {
        const cplx a = self_energy(kRef, s, SelfEnergyMethod::ClosedForm);
        const cplx b = self_energy(kRef, s, SelfEnergyMethod::Quadrature);
        CHECK(std::abs(a - b) < 1e-9 * std::abs(b));
        CHECK(std::abs(self_energy(kRef, std::conj(s)) - std::conj(a)) < 1e-14 * std::abs(a));
    }
    double prev = self_energy(kRef, 0.01).real();
    for (double s : {0.1, 1.0, 10.0, 100.0, 1e4}) {
        const double v = self_energy(kRef, s).real();
        CHECK(v < prev);
        prev = v;
    }
    CHECK(std::abs(self_energy(kRef, 1e9)) < 1e-4);
    CHECK_KIND(self_energy(kRef, -1.0), ErrorKind::BranchCut);
    CHECK_KIND(self_energy(kRef, 0.0), ErrorKind::BranchCut);
}

TEST_CASE("thermal_self_energy off the axis and on the cut") {
    CHECK(thermal_self_energy({0.0, 20.0}, 1.0, cplx(2.0, 0.0)) == cplx(0.0));
    const double beta = 0.1;
    const cplx s(3.0, 1.0);
    auto weight = [&](double w) {
        if (w == 0.0) return kRef.coupling / (beta * 2.0 * oracle::pi);
        return eval_spectral_density(kRef, w) * bose_weight(beta, w) / (2.0 * oracle::pi);
    };
    const cplx ref = simpson([&](long n) { return oracle::trapezoid_c([&](double w) { return weight(w) / (s + w); }, 0.0, 600.0, n); },
                             1000000);
    CHECK(std::abs(thermal_self_energy(kRef, beta, s) - ref) < 1e-8 * std::abs(ref));
    // deep-cold limit: only w ~ 1/beta contributes, giving Gamma pi / (12 beta^2 s)
    const double cold = std::abs(thermal_self_energy(kRef, 1e4, 2.0));
    CHECK(cold == doctest::Approx(0.5 * oracle::pi / (12.0 * 1e8 * 2.0)).epsilon(1e-6));
    CHECK(cold < 1e-9);

    // principal value at z = -a from odd differences about the pole
    const double a = 2.5, b1 = 1.0;
    auto w1 = [&](double w) {
        if (w == 0.0) return kRef.coupling / (b1 * 2.0 * oracle::pi);
        return eval_spectral_density(kRef, w) * bose_weight(b1, w) / (2.0 * oracle::pi);
    };
    auto odd = [&](double u) {
        if (u == 0.0) return 2.0 * (w1(a + 1e-6) - w1(a - 1e-6)) / 2e-6;
        return (w1(a + u) - w1(a - u)) / u;
    };
    const double near = simpson([&](long n) { return oracle::trapezoid(odd, 0.0, a, n); }, 200000);
    const double far = simpson([&](long n) { return oracle::trapezoid([&](double w) { return w1(w) / (w - a); }, 2.0 * a, 120.0, n); },
                               400000);
    const double pv = near + far;
    const cplx p = thermal_self_energy(kRef, b1, -a, Continuation::Principal);
    const cplx up = thermal_self_energy(kRef, b1, -a, Continuation::Upper);
    const cplx lo = thermal_self_energy(kRef, b1, -a, Continuation::Lower);
    CHECK(std::abs(p.real() - pv) < 1e-7 * std::abs(pv));
    CHECK(p.imag() == 0.0);
    CHECK(up.real() == p.real());
    CHECK(up.imag() == doctest::Approx(-oracle::pi * w1(a)).epsilon(1e-12));
    CHECK(lo.imag() == doctest::Approx(oracle::pi * w1(a)).epsilon(1e-12));
    // the continuations are limits from either side of the cut
    const cplx above = thermal_self_energy(kRef, b1, cplx(-a, 1e-4));
    CHECK(std::abs(above - up) < 1e-3);
    const cplx below = thermal_self_energy(kRef, b1, cplx(-a, -1e-4));
    CHECK(std::abs(below - lo) < 1e-3);

    CHECK_KIND(thermal_self_energy(kRef, b1, -a, Continuation::Disabled), ErrorKind::PoleOnAxis);
    CHECK_KIND(thermal_self_energy(kRef, b1, 0.0), ErrorKind::DivergentKernel);
}

TEST_CASE("discretize") {
    const ModeList zero = discretize({0.0, 20.0}, 16, 200.0);
    CHECK(zero.size() == 16);
    for (double v : zero.coupling) CHECK(v == 0.0);

    const ModeList m = discretize(kRef, 200, 200.0, NodeRule::GaussLegendre);
    REQUIRE(m.size() == 200);
    double sum = 0.0;
    for (std::size_t k = 0; k < m.size(); ++k) {
        CHECK(m.frequency[k] > 0.0);
        CHECK(m.frequency[k] <= 200.0);
        if (k > 0) CHECK(m.frequency[k] > m.frequency[k - 1]);
        sum += m.coupling[k] * m.coupling[k];
    }
    const double exact = kRef.coupling * 400.0 / (4.0 * oracle::pi) * std::log(1.0 + 100.0);
    CHECK(rel_diff(sum, exact) < 1e-6);

    CHECK_KIND(discretize(kRef, 0, 200.0), ErrorKind::InvalidGrid);
    CHECK_KIND(discretize(kRef, 10, 0.0), ErrorKind::InvalidGrid);
    CHECK_KIND(discretize(kRef, 10, -1.0), ErrorKind::InvalidGrid);
}

TEST_CASE("discretization converges under k_c doubling") {
    // sum V_k^2 f(w_k) -> Sigma(1) for f = 1/(1+w) on the half-line rule
    const double target = self_energy(kRef, 1.0).real();
    double prev_err = 0.0;
    for (std::size_t kc : {25u, 50u, 100u}) {
        const ModeList m = discretize(kRef, kc, 0.0, NodeRule::HalfLine);
        double sum = 0.0;
        for (std::size_t k = 0; k < m.size(); ++k) sum += m.coupling[k] * m.coupling[k] / (1.0 + m.frequency[k]);
        const double err = std::abs(sum - target);
        if (kc > 25) CHECK(err <= 0.5 * prev_err);
        prev_err = err;
    }
    CHECK(prev_err < 1e-8 * target);
}
