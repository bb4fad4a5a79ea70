#pragma once

#include "gsrww/innovations.hpp"
#include "gsrww/params.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <vector>

namespace gsrww {

/// Time-varying parameter path: `base` outside the shock interval and
/// `base + direction * magnitude` for observations floor(n*tau1)+1..floor(n*tau2).
struct ShockSpec {
    GarchParams base;
    Eigen::VectorXd direction;
    double magnitude = 0.0;
    double tau1_star = 0.5;
    double tau2_star = 0.5;

    static ShockSpec none(const GarchParams& base);

    [[nodiscard]] GarchParams shocked() const;
    /// Parameters in force at 1-based observation i of a series of length n.
    [[nodiscard]] const GarchParams& at(std::size_t i, std::size_t n, const GarchParams& shocked) const;

    /// Throws DomainError on an invalid shock.
    void validate(const ParameterSpace& space) const;
};

struct SeriesSample {
    std::vector<double> x;
    std::vector<double> sigma2;
    /// Innovations behind x, so that x[i] == zeta[i] * sqrt(sigma2[i]).
    std::vector<double> zeta;
    std::uint64_t seed = 0;
    std::size_t burn_in = 0;

    [[nodiscard]] std::size_t size() const noexcept { return x.size(); }
};

struct LyapunovEstimate {
    double value = 0.0;
    double std_error = 0.0;

    /// gamma + 3*SE < 0
    [[nodiscard]] bool stationary() const noexcept { return value + 3.0 * std_error < 0.0; }
};

/// Monte Carlo estimate of the top Lyapunov exponent gamma(theta).
///
/// GARCH(1,1) averages log(alpha1*zeta^2 + beta1) directly. Other orders
/// follow the log-norm of the random companion product A_m...A_1,
/// renormalising every `renorm_every` steps; the standard error comes from
/// the per-block growth rates.
LyapunovEstimate lyapunov_exponent(const GarchParams& params, const InnovationDist& dist,
                                   std::size_t m, std::uint64_t seed,
                                   std::size_t renorm_every = 50);

/// Same estimate through the (r+s)x(r+s) companion product, for any order.
LyapunovEstimate lyapunov_exponent_product(const GarchParams& params, const InnovationDist& dist,
                                           std::size_t m, std::uint64_t seed,
                                           std::size_t renorm_every = 50);

/// Random companion matrix A_t for innovation zeta (state: X^2 lags then sigma^2 lags).
Eigen::MatrixXd companion_matrix(const GarchParams& params, double zeta);

/// Spectral radius of the s x s matrix with first row beta and unit subdiagonal.
double companion_spectral_radius(const GarchParams& params);

/// Simulates X_1..X_n under the path of `spec`. The recursion starts from
/// the deterministic fixed point and runs `burn_in` discarded steps with the
/// base parameters.
SeriesSample simulate(const ShockSpec& spec, std::size_t n, const InnovationDist& dist,
                      std::uint64_t seed, std::size_t burn_in = 1000);

inline SeriesSample simulate_garch(const GarchParams& params, std::size_t n,
                                   const InnovationDist& dist, std::uint64_t seed,
                                   std::size_t burn_in = 1000) {
    return simulate(ShockSpec::none(params), n, dist, seed, burn_in);
}

/// alpha0 / (1 - sum(alpha) - sum(beta)) when that is finite and positive.
double unconditional_variance(const GarchParams& params);

}  // namespace gsrww
