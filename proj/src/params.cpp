#include "gsrww/params.hpp"

#include "gsrww/errors.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace gsrww {

ParameterSpace ParameterSpace::garch(std::size_t r, std::size_t s, double alpha_min,
                                     double beta_sum_max) {
    ParameterSpace space;
    space.r = r;
    space.s = s;
    space.alpha_min = alpha_min;
    space.beta_sum_max = beta_sum_max;
    space.upper.assign(r + s + 1, 0.0);
    space.upper[0] = 1e8;
    for (std::size_t j = 0; j < r; ++j) space.upper[1 + j] = 50.0;
    for (std::size_t k = 0; k < s; ++k) space.upper[1 + r + k] = beta_sum_max;
    return space;
}

void ParameterSpace::validate() const {
    if (r == 0) throw DomainError("parameter space needs r >= 1");
    if (!(alpha_min > 0.0)) throw DomainError("alpha_min must be positive");
    if (!(beta_sum_max > 0.0 && beta_sum_max < 1.0))
        throw DomainError("beta_sum_max must lie in (0,1)");
    if (upper.size() != dim())
        throw DomainError("parameter space needs one upper bound per coordinate");
    for (std::size_t i = 0; i < upper.size(); ++i) {
        if (!std::isfinite(upper[i]) || !(upper[i] > 0.0))
            throw DomainError("upper bound " + std::to_string(i) + " must be finite and positive");
    }
    if (!(upper[0] > alpha_min)) throw DomainError("upper bound on alpha0 must exceed alpha_min");
}

GarchParams GarchParams::from_vector(const Eigen::VectorXd& theta, std::size_t r, std::size_t s) {
    if (static_cast<std::size_t>(theta.size()) != r + s + 1)
        throw DomainError("parameter vector has wrong length");
    GarchParams p;
    p.alpha0 = theta[0];
    p.alphas.resize(r);
    p.betas.resize(s);
    for (std::size_t j = 0; j < r; ++j) p.alphas[j] = theta[1 + j];
    for (std::size_t k = 0; k < s; ++k) p.betas[k] = theta[1 + r + k];
    return p;
}

Eigen::VectorXd GarchParams::to_vector() const {
    Eigen::VectorXd theta(dim());
    theta[0] = alpha0;
    for (std::size_t j = 0; j < r(); ++j) theta[1 + j] = alphas[j];
    for (std::size_t k = 0; k < s(); ++k) theta[1 + r() + k] = betas[k];
    return theta;
}

double GarchParams::sum_alpha() const noexcept {
    return std::accumulate(alphas.begin(), alphas.end(), 0.0);
}

double GarchParams::sum_beta() const noexcept {
    return std::accumulate(betas.begin(), betas.end(), 0.0);
}

bool GarchParams::inside(const ParameterSpace& space) const noexcept {
    try {
        validate(space);
        return true;
    } catch (const DomainError&) {
        return false;
    }
}

void GarchParams::validate(const ParameterSpace& space) const {
    if (r() != space.r || s() != space.s)
        throw DomainError("parameter orders do not match the parameter space");
    if (!std::isfinite(alpha0) || alpha0 < space.alpha_min)
        throw DomainError("alpha0 below alpha_min");
    for (double a : alphas)
        if (!std::isfinite(a) || a < 0.0) throw DomainError("negative ARCH coefficient");
    for (double b : betas)
        if (!std::isfinite(b) || b < 0.0) throw DomainError("negative GARCH coefficient");
    if (!(sum_beta() < 1.0)) throw DomainError("sum of GARCH coefficients must be below 1");
}

}  // namespace gsrww
