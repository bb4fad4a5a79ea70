#pragma once

#include "gsrww/likelihood.hpp"
#include "gsrww/params.hpp"

#include <Eigen/Dense>

#include <span>

namespace gsrww {

/// Complement-window estimates of V (expected Hessian) and I (score outer
/// product), both normalised by n * (1 - (tau2 - tau1)).
struct InformationEstimate {
    Eigen::MatrixXd v_bar;
    Eigen::MatrixXd i_bar;
    /// Complement mean of the score; near zero at a consistent estimate.
    Eigen::VectorXd mean_score;
};

struct SandwichEstimate {
    Eigen::MatrixXd v_bar;
    Eigen::MatrixXd i_bar;
    Eigen::MatrixXd sigma_bar;
    Eigen::MatrixXd sigma_h;
    double condition_v = 0.0;
    /// Smallest eigenvalue of the raw sandwich before clipping.
    double min_eigenvalue = 0.0;
    /// True when an eigenvalue below -1e-6 had to be clipped.
    bool psd_repaired = false;
};

inline constexpr double kMaxConditionNumber = 1e12;

InformationEstimate estimate_v_i(std::span<const double> x, const Window& window,
                                 const GarchParams& theta_bar,
                                 PresampleInit init = PresampleInit::fixed_point);

/// Condition number |lambda|max / |lambda|min of a symmetric matrix.
double condition_number(const Eigen::MatrixXd& symmetric);

/// V^-1 I V^-1 via linear solves, symmetrised and clipped to PSD, plus H' Sigma H.
SandwichEstimate sandwich(const Eigen::MatrixXd& v_bar, const Eigen::MatrixXd& i_bar,
                          const Eigen::MatrixXd& h);

/// Symmetric square root through the eigendecomposition (negative eigenvalues clipped).
Eigen::MatrixXd symmetric_sqrt(const Eigen::MatrixXd& symmetric);

}  // namespace gsrww
