#pragma once

#include "gsrww/params.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <vector>

namespace gsrww {

/// Fractional observation window (tau1, tau2] over a series of length n.
/// Covers 1-based indices floor(n*tau1)+1 .. floor(n*tau2), i.e. the 0-based
/// half-open range [begin(), end()).
class Window {
public:
    Window(double tau1, double tau2, std::size_t n);
    /// Window spanning grid points j/L .. k/L.
    static Window from_grid(std::size_t j, std::size_t k, std::size_t grid, std::size_t n);
    /// The empty window (0,0); its complement is the whole series.
    static Window empty(std::size_t n);
    static Window full(std::size_t n) { return {0.0, 1.0, n}; }

    [[nodiscard]] double tau1() const noexcept { return tau1_; }
    [[nodiscard]] double tau2() const noexcept { return tau2_; }
    [[nodiscard]] double span() const noexcept { return tau2_ - tau1_; }
    [[nodiscard]] std::size_t n() const noexcept { return n_; }
    [[nodiscard]] std::size_t begin() const noexcept { return begin_; }
    [[nodiscard]] std::size_t end() const noexcept { return end_; }
    [[nodiscard]] std::size_t count() const noexcept { return end_ - begin_; }
    [[nodiscard]] bool is_empty() const noexcept { return end_ == begin_; }

private:
    Window(double tau1, double tau2, std::size_t n, std::size_t begin, std::size_t end);

    double tau1_;
    double tau2_;
    std::size_t n_;
    std::size_t begin_;
    std::size_t end_;
};

/// Pre-sample value of sigma^2 used by the truncated recursion (the lagged
/// X^2 are always zero).
enum class PresampleInit {
    /// alpha0 / (1 - sum(beta)), the zero-history fixed point.
    fixed_point,
    /// alpha0
    intercept,
};

/// Which observations of the series contribute to the objective.
enum class Region { window, complement };

struct LikEval {
    double value = 0.0;
    Eigen::VectorXd gradient;
    Eigen::MatrixXd hessian;
    std::vector<double> per_obs_sigma2;
};

/// Fitted sigma_i^2(theta) for i = 1..n from the truncated recursion.
std::vector<double> sigma2_path(std::span<const double> x_squared, const GarchParams& params,
                                PresampleInit init = PresampleInit::fixed_point);

/// (1/n) * sum over the window of 1/2 (X_i^2 / sigma_i^2 + log sigma_i^2).
/// The recursion always starts at observation 1.
double neg_loglik(std::span<const double> x, const Window& window, const GarchParams& params,
                  PresampleInit init = PresampleInit::fixed_point);

/// Value and analytic gradient; the hot path of the optimiser.
double neg_loglik_grad(std::span<const double> x, const Window& window, Region region,
                       const GarchParams& params, Eigen::VectorXd& gradient,
                       PresampleInit init = PresampleInit::fixed_point);

/// Value only, for window or complement.
double neg_loglik_region(std::span<const double> x, const Window& window, Region region,
                         const GarchParams& params,
                         PresampleInit init = PresampleInit::fixed_point);

/// Value, gradient, symmetric Hessian and the fitted sigma^2 path.
LikEval neg_loglik_grad_hess(std::span<const double> x, const Window& window,
                             const GarchParams& params, Region region = Region::window,
                             PresampleInit init = PresampleInit::fixed_point);

/// Per-observation loss l_i for i = 1..n.
std::vector<double> per_observation_loss(std::span<const double> x, const GarchParams& params,
                                         PresampleInit init = PresampleInit::fixed_point);

/// Sums of per-observation second derivatives and score outer products over
/// a region, without the 1/n factor.
struct DerivativeSums {
    Eigen::MatrixXd hessian_sum;
    Eigen::MatrixXd score_outer_sum;
    Eigen::VectorXd score_sum;
    std::size_t count = 0;
};

DerivativeSums derivative_sums(std::span<const double> x, const Window& window, Region region,
                               const GarchParams& params,
                               PresampleInit init = PresampleInit::fixed_point);

/// Per-observation scores grad l_i (one column per contributing observation).
Eigen::MatrixXd score_contributions(std::span<const double> x, const Window& window,
                                    Region region, const GarchParams& params,
                                    PresampleInit init = PresampleInit::fixed_point);

}  // namespace gsrww
