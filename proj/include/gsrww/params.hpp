#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace gsrww {

/// Admissible parameter region for a GARCH(r,s) fit.
///
/// The lower bound on the intercept keeps sigma^2 away from zero; the cap on
/// sum(beta) enforces sum(beta) < 1 strictly. Upper bounds are checked after
/// a fit and reported through FitResult::at_boundary.
struct ParameterSpace {
    std::size_t r = 1;
    std::size_t s = 1;
    double alpha_min = 1e-6;
    double beta_sum_max = 0.999;
    /// One finite bound per coordinate in (alpha0, alphas..., betas...) order.
    std::vector<double> upper;

    static ParameterSpace garch(std::size_t r, std::size_t s, double alpha_min = 1e-6,
                                double beta_sum_max = 0.999);

    [[nodiscard]] std::size_t dim() const noexcept { return r + s + 1; }

    /// Throws DomainError when the space itself is malformed.
    void validate() const;
};

/// theta = (alpha0, alpha_1..alpha_r, beta_1..beta_s).
struct GarchParams {
    double alpha0 = 0.0;
    std::vector<double> alphas;
    std::vector<double> betas;

    GarchParams() = default;
    GarchParams(double a0, std::vector<double> a, std::vector<double> b)
        : alpha0(a0), alphas(std::move(a)), betas(std::move(b)) {}

    static GarchParams garch11(double alpha0, double alpha1, double beta1) {
        return {alpha0, {alpha1}, {beta1}};
    }
    static GarchParams from_vector(const Eigen::VectorXd& theta, std::size_t r, std::size_t s);

    [[nodiscard]] std::size_t r() const noexcept { return alphas.size(); }
    [[nodiscard]] std::size_t s() const noexcept { return betas.size(); }
    [[nodiscard]] std::size_t dim() const noexcept { return 1 + alphas.size() + betas.size(); }
    [[nodiscard]] Eigen::VectorXd to_vector() const;

    [[nodiscard]] double sum_alpha() const noexcept;
    [[nodiscard]] double sum_beta() const noexcept;
    /// alpha_1 + ... + alpha_r + beta_1 + ... + beta_s
    [[nodiscard]] double persistence() const noexcept { return sum_alpha() + sum_beta(); }

    /// True when every invariant of the space holds (upper bounds excluded).
    [[nodiscard]] bool inside(const ParameterSpace& space) const noexcept;
    /// Throws DomainError naming the first violated invariant.
    void validate(const ParameterSpace& space) const;

    friend bool operator==(const GarchParams&, const GarchParams&) = default;
};

}  // namespace gsrww
