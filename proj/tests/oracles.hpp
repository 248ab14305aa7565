#pragma once

// Test-side reference computations. None of these call into the library's solvers.

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cplx = std::complex<double>;
inline constexpr double pi = 3.141592653589793238462643383279502884;

struct Moments {
    double n = 0.0;
    double s = 0.0;  // real in equilibrium
};

inline double bose(double w, double t) { return 1.0 / std::expm1(w / t); }

// Composite trapezoid on [a, b] with `panels` panels.
inline double trapezoid(const std::function<double(double)>& f, double a, double b, long panels) {
    const double h = (b - a) / panels;
    double acc = 0.5 * (f(a) + f(b));
    for (long i = 1; i < panels; ++i) acc += f(a + i * h);
    return acc * h;
}

inline cplx trapezoid_c(const std::function<cplx(double)>& f, double a, double b, long panels) {
    const double h = (b - a) / panels;
    cplx acc = 0.5 * (f(a) + f(b));
    for (long i = 1; i < panels; ++i) acc += f(a + i * h);
    return acc * h;
}

// int_0^inf f(w) dw via w = c * u / (1 - u), trapezoid in u on [0, 1 - eps].
inline double half_line(const std::function<double(double)>& f, double c, long panels) {
    auto g = [&](double u) {
        if (u >= 1.0) {
            const double w = 1e12 * c;  // endpoint limit of f(w) (w + c)^2 / c
            return f(w) * (w + c) * (w + c) / c;
        }
        const double w = c * u / (1.0 - u);
        return f(w) * c / ((1.0 - u) * (1.0 - u));
    };
    return trapezoid(g, 0.0, 1.0, panels);
}

inline cplx half_line_c(const std::function<cplx(double)>& f, double c, long panels) {
    auto g = [&](double u) -> cplx {
        if (u >= 1.0) {
            const double w = 1e12 * c;
            return f(w) * ((w + c) * (w + c) / c);
        }
        const double w = c * u / (1.0 - u);
        return f(w) * (c / ((1.0 - u) * (1.0 - u)));
    };
    return trapezoid_c(g, 0.0, 1.0, panels);
}

inline double drude(double gamma, double cutoff, double w) { return gamma * w * cutoff * cutoff / (w * w + cutoff * cutoff); }

// Equilibrium moments of the continuum model from imaginary-frequency sums:
// <x^2> = T sum_n 1/(nu^2 + 1 - K(nu)), <p^2> = T sum_n (1 - K)/(nu^2 + 1 - K),
// with bath kernel K(nu) = Gamma omega_D^2 / (omega_D + |nu|). The tail beyond N terms is summed
// analytically to O(1/N^2).
inline Moments matsubara(double gamma, double cutoff, double t, long terms = 2000000) {
    auto k = [&](double nu) { return gamma * cutoff * cutoff / (cutoff + std::abs(nu)); };
    double x2 = 1.0 / (1.0 - k(0.0)), p2 = 1.0;
    double sx = 0.0, sp = 0.0;
    for (long n = terms; n >= 1; --n) {
        const double nu = 2.0 * pi * n * t;
        const double d = nu * nu + 1.0 - k(nu);
        sx += 1.0 / d;
        sp += (1.0 - k(nu)) / d;
    }
    const double nn = double(terms);
    const double tail = 2.0 / ((2.0 * pi * t) * (2.0 * pi * t)) * (1.0 / nn - 0.5 / (nn * nn));
    x2 = t * (x2 + 2.0 * sx) + t * tail;
    p2 = t * (p2 + 2.0 * sp) + t * tail;
    return {0.5 * (x2 + p2 - 1.0), 0.5 * (x2 - p2)};
}

// Exact thermal moments of the system mode for discrete modes, from the normal-mode
// decomposition of H = P^2/2 + X^T K X / 2 (mass-weighted coordinates).
inline Moments normal_mode_moments(const std::vector<double>& freq, const std::vector<double>& coupling, double beta) {
    const int n = int(freq.size()) + 1;
    Eigen::MatrixXd k = Eigen::MatrixXd::Zero(n, n);
    k(0, 0) = 1.0;
    for (int j = 1; j < n; ++j) {
        k(j, j) = freq[j - 1] * freq[j - 1];
        k(0, j) = k(j, 0) = 2.0 * coupling[j - 1] * std::sqrt(freq[j - 1]);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(k);
    double x2 = 0.0, p2 = 0.0;
    for (int j = 0; j < n; ++j) {
        const double w = std::sqrt(es.eigenvalues()(j));
        const double c = 1.0 / std::tanh(0.5 * beta * w);
        const double u = es.eigenvectors()(0, j);
        x2 += u * u * c / (2.0 * w);
        p2 += u * u * c * w / 2.0;
    }
    return {0.5 * (x2 + p2 - 1.0), 0.5 * (x2 - p2)};
}

inline double reduced_z(const Moments& m) { return std::sqrt(m.n * m.n + m.n - m.s * m.s); }

// f(t) = (1/2 pi i) contour integral of F(s) e^{st} over the circle |s - c| = r, which must
// enclose every singularity of F. Trapezoid in the angle; spectrally accurate.
inline cplx contour_inverse(const std::function<cplx(cplx)>& f, double t, cplx center, double radius, int points) {
    cplx acc = 0.0;
    for (int i = 0; i < points; ++i) {
        const double th = 2.0 * pi * (i + 0.5) / points;
        const cplx z = center + radius * std::polar(1.0, th);
        acc += f(z) * std::exp(z * t) * (z - center);
    }
    return acc / double(points);
}

}  // namespace oracle
