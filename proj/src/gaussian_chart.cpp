#include "qbm/gaussian_chart.hpp"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "qbm/errors.hpp"

namespace qbm {

namespace {

double log_det_positive(const Eigen::PartialPivLU<Eigen::MatrixXd>& lu, const char* what) {
    const Eigen::MatrixXd& u = lu.matrixLU();
    double log_abs = 0.0;
    int sign = lu.permutationP().determinant();
    for (Eigen::Index i = 0; i < u.rows(); ++i) {
        const double d = u(i, i);
        if (d < 0.0) sign = -sign;
        log_abs += std::log(std::abs(d));
    }
    if (sign <= 0 || !std::isfinite(log_abs)) fail(ErrorKind::NonTraceable, what);
    return log_abs;
}

}  // namespace

GaussianChart compose(const GaussianChart& a, const GaussianChart& b) {
    const Eigen::Index n = a.dim();
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(id - b.create * a.annihilate);
    if (lu.rcond() < 1e-14) fail(ErrorKind::SingularBlock, "pairing resolvent is numerically singular");
    const Eigen::MatrixXd x = lu.inverse();

    GaussianChart out;
    const Eigen::MatrixXd ax = a.omega * x;
    out.omega = ax * b.omega;
    out.create = a.create + ax * b.create * a.omega.transpose();
    out.annihilate = b.annihilate + b.omega.transpose() * x.transpose() * a.annihilate * b.omega;
    // symmetric by construction; remove rounding drift
    out.create = 0.5 * (out.create + out.create.transpose()).eval();
    out.annihilate = 0.5 * (out.annihilate + out.annihilate.transpose()).eval();
    out.log_prefactor = a.log_prefactor + b.log_prefactor - 0.5 * log_det_positive(lu, "pairing resolvent determinant");
    return out;
}

double log_trace(const GaussianChart& a) {
    const Eigen::Index n = a.dim();
    Eigen::MatrixXd m(2 * n, 2 * n);
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
    m << id - a.omega, -a.create, -a.annihilate, id - a.omega.transpose();
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
    return a.log_prefactor - 0.5 * log_det_positive(lu, "trace of the Gaussian operator does not exist");
}

Eigen::MatrixXd expm(const Eigen::MatrixXd& a) { return a.exp(); }

}  // namespace qbm
