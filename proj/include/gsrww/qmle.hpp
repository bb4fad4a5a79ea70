#pragma once

#include "gsrww/likelihood.hpp"
#include "gsrww/params.hpp"

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gsrww {

/// Smooth bijection between R^(r+s+1) and the interior of the parameter space:
/// alpha0 = alpha_min + exp(u0), alpha_j = exp(u_j),
/// beta_k = B * exp(v_k) / (1 + sum_l exp(v_l)) with B = beta_sum_max.
class Reparameterization {
public:
    explicit Reparameterization(const ParameterSpace& space);

    [[nodiscard]] GarchParams to_params(const Eigen::VectorXd& u) const;
    /// Requires alpha0 > alpha_min, alpha_j > 0, beta_k > 0 and sum(beta) < B.
    [[nodiscard]] Eigen::VectorXd to_unconstrained(const GarchParams& params) const;
    /// d theta / d u at u.
    [[nodiscard]] Eigen::MatrixXd jacobian(const Eigen::VectorXd& u) const;

private:
    ParameterSpace space_;
};

struct FitOptions {
    double tol = 1e-8;
    int max_iterations = 200;
    PresampleInit init = PresampleInit::fixed_point;
    /// Hold alpha0 at this value instead of estimating it.
    std::optional<double> fixed_alpha0;
    /// Minimum observations per parameter in the fitted region.
    std::size_t min_obs_per_param = 10;
    /// Override the default start list (ARCH sum, GARCH sum) pairs.
    std::vector<std::pair<double, double>> starts;
};

struct FitResult {
    GarchParams theta_hat;
    double neg_loglik = 0.0;
    bool converged = false;
    int iterations = 0;
    /// Gradient norm in the unconstrained coordinates.
    double grad_norm = 0.0;
    bool at_boundary = false;
    int best_start = -1;
};

/// Default starting points as (sum of ARCH, sum of GARCH) pairs; the first is
/// the moment-matched start alpha1 = 0.1, beta1 = 0.8.
std::vector<std::pair<double, double>> default_starts();

/// argmin over the space of the windowed quasi-likelihood.
FitResult fit_window(std::span<const double> x, const Window& window, const ParameterSpace& space,
                     const FitOptions& opts = {});

/// Same estimator on every observation outside `window`.
FitResult fit_complement(std::span<const double> x, const Window& window,
                         const ParameterSpace& space, const FitOptions& opts = {});

/// Shared implementation of the two fits above.
FitResult fit_region(std::span<const double> x, const Window& window, Region region,
                     const ParameterSpace& space, const FitOptions& opts);

}  // namespace gsrww
