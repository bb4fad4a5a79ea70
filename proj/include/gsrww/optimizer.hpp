#pragma once

#include <Eigen/Dense>

#include <functional>

namespace gsrww {

/// f(u, grad) -> value; grad is written in place. A non-finite value marks
/// an infeasible trial point.
using Objective = std::function<double(const Eigen::VectorXd&, Eigen::VectorXd&)>;

struct MinimizeOptions {
    double grad_tol = 1e-8;
    int max_iterations = 200;
    /// Coordinates held fixed at their starting value (empty: all free).
    Eigen::VectorXi fixed;
};

struct MinimizeResult {
    Eigen::VectorXd u;
    double value = 0.0;
    double grad_norm = 0.0;
    int iterations = 0;
    bool converged = false;
    bool used_fallback = false;
};

/// BFGS with Armijo backtracking. Falls back to Nelder-Mead when the line
/// search cannot make progress twice in a row.
MinimizeResult minimize_bfgs(const Objective& f, const Eigen::VectorXd& start,
                             const MinimizeOptions& opts = {});

/// Derivative-free simplex search, used as the BFGS fallback.
MinimizeResult minimize_nelder_mead(const Objective& f, const Eigen::VectorXd& start,
                                    const MinimizeOptions& opts = {}, int max_evaluations = 2000);

}  // namespace gsrww
