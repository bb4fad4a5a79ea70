#include "gsrww/covariance.hpp"

#include "gsrww/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>

namespace gsrww {

InformationEstimate estimate_v_i(std::span<const double> x, const Window& window,
                                 const GarchParams& theta_bar, PresampleInit init) {
    if (window.count() == x.size()) throw DomainError("window complement is empty");
    const auto sums = derivative_sums(x, window, Region::complement, theta_bar, init);
    const double norm = static_cast<double>(x.size()) * (1.0 - window.span());
    InformationEstimate out;
    out.v_bar = sums.hessian_sum / norm;
    out.i_bar = sums.score_outer_sum / norm;
    out.mean_score = sums.score_sum / static_cast<double>(sums.count);
    if (condition_number(out.v_bar) > kMaxConditionNumber)
        throw InferenceError("V estimate is singular on this complement; use a larger complement");
    return out;
}

double condition_number(const Eigen::MatrixXd& symmetric) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(symmetric, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd abs = eig.eigenvalues().cwiseAbs();
    const double lo = abs.minCoeff();
    if (lo == 0.0 || !std::isfinite(lo)) return std::numeric_limits<double>::infinity();
    return abs.maxCoeff() / lo;
}

SandwichEstimate sandwich(const Eigen::MatrixXd& v_bar, const Eigen::MatrixXd& i_bar,
                          const Eigen::MatrixXd& h) {
    const Eigen::Index d = v_bar.rows();
    if (v_bar.cols() != d || i_bar.rows() != d || i_bar.cols() != d || h.rows() != d)
        throw DomainError("sandwich inputs have inconsistent dimensions");
    SandwichEstimate out;
    out.v_bar = 0.5 * (v_bar + v_bar.transpose());
    out.i_bar = 0.5 * (i_bar + i_bar.transpose());
    out.condition_v = condition_number(out.v_bar);
    if (!(out.condition_v <= kMaxConditionNumber))
        throw InferenceError("V estimate is singular (condition number above 1e12); "
                             "use a larger complement");

    const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(out.v_bar);
    const Eigen::MatrixXd left = qr.solve(out.i_bar);                   // V^-1 I
    const Eigen::MatrixXd raw = qr.solve(left.transpose()).transpose();  // (V^-1 (V^-1 I)')'
    Eigen::MatrixXd sym = 0.5 * (raw + raw.transpose());

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
    const Eigen::VectorXd lambda = eig.eigenvalues();
    out.min_eigenvalue = lambda.minCoeff();
    if (out.min_eigenvalue < 0.0) {
        out.psd_repaired = out.min_eigenvalue < -1e-6;
        const Eigen::VectorXd clipped = lambda.cwiseMax(0.0);
        sym = eig.eigenvectors() * clipped.asDiagonal() * eig.eigenvectors().transpose();
        sym = 0.5 * (sym + sym.transpose());
    }
    out.sigma_bar = sym;
    out.sigma_h = h.transpose() * out.sigma_bar * h;
    return out;
}

Eigen::MatrixXd symmetric_sqrt(const Eigen::MatrixXd& symmetric) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (symmetric + symmetric.transpose()));
    const Eigen::VectorXd root = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return eig.eigenvectors() * root.asDiagonal() * eig.eigenvectors().transpose();
}

}  // namespace gsrww
