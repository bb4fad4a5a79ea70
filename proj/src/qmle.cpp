#include "gsrww/qmle.hpp"

#include "gsrww/errors.hpp"
#include "gsrww/kernels.hpp"
#include "gsrww/optimizer.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace gsrww {

Reparameterization::Reparameterization(const ParameterSpace& space) : space_(space) {
    space_.validate();
}

GarchParams Reparameterization::to_params(const Eigen::VectorXd& u) const {
    const std::size_t r = space_.r;
    const std::size_t s = space_.s;
    GarchParams p;
    p.alpha0 = space_.alpha_min + std::exp(u[0]);
    p.alphas.resize(r);
    for (std::size_t j = 0; j < r; ++j) p.alphas[j] = std::exp(u[static_cast<Eigen::Index>(1 + j)]);
    p.betas.resize(s);
    if (s > 0) {
        // Shift by the largest logit so exp() cannot overflow.
        double top = 0.0;
        for (std::size_t k = 0; k < s; ++k) top = std::max(top, u[static_cast<Eigen::Index>(1 + r + k)]);
        double denom = std::exp(-top);
        for (std::size_t k = 0; k < s; ++k) {
            p.betas[k] = std::exp(u[static_cast<Eigen::Index>(1 + r + k)] - top);
            denom += p.betas[k];
        }
        for (double& b : p.betas) b = space_.beta_sum_max * b / denom;
    }
    return p;
}

Eigen::VectorXd Reparameterization::to_unconstrained(const GarchParams& params) const {
    const std::size_t r = space_.r;
    const std::size_t s = space_.s;
    if (params.r() != r || params.s() != s) throw DomainError("parameter orders do not match");
    if (!(params.alpha0 > space_.alpha_min)) throw DomainError("alpha0 must exceed alpha_min");
    Eigen::VectorXd u(static_cast<Eigen::Index>(r + s + 1));
    u[0] = std::log(params.alpha0 - space_.alpha_min);
    for (std::size_t j = 0; j < r; ++j) {
        if (!(params.alphas[j] > 0.0)) throw DomainError("ARCH coefficient must be positive");
        u[static_cast<Eigen::Index>(1 + j)] = std::log(params.alphas[j]);
    }
    const double slack = space_.beta_sum_max - params.sum_beta();
    if (s > 0 && !(slack > 0.0)) throw DomainError("sum of GARCH coefficients must be below the cap");
    for (std::size_t k = 0; k < s; ++k) {
        if (!(params.betas[k] > 0.0)) throw DomainError("GARCH coefficient must be positive");
        u[static_cast<Eigen::Index>(1 + r + k)] = std::log(params.betas[k]) - std::log(slack);
    }
    return u;
}

Eigen::MatrixXd Reparameterization::jacobian(const Eigen::VectorXd& u) const {
    const std::size_t r = space_.r;
    const std::size_t s = space_.s;
    const auto d = static_cast<Eigen::Index>(r + s + 1);
    const GarchParams p = to_params(u);
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(d, d);
    jac(0, 0) = p.alpha0 - space_.alpha_min;
    for (std::size_t j = 0; j < r; ++j) {
        const auto jj = static_cast<Eigen::Index>(1 + j);
        jac(jj, jj) = p.alphas[j];
    }
    const double cap = space_.beta_sum_max;
    for (std::size_t k = 0; k < s; ++k) {
        for (std::size_t l = 0; l < s; ++l) {
            const auto kk = static_cast<Eigen::Index>(1 + r + k);
            const auto ll = static_cast<Eigen::Index>(1 + r + l);
            jac(kk, ll) = p.betas[k] * ((k == l ? 1.0 : 0.0) - p.betas[l] / cap);
        }
    }
    return jac;
}

std::vector<std::pair<double, double>> default_starts() {
    return {{0.1, 0.8}, {0.05, 0.93}, {0.3, 0.6}, {0.7, 0.25}};
}

namespace {

double mean_square(std::span<const double> x, const Window& window, Region region,
                   double& cv) {
    kernels::SquareMoments m;
    std::size_t count = 0;
    auto add = [&](std::size_t lo, std::size_t hi) {
        const auto part = kernels::square_moments(x.subspan(lo, hi - lo));
        m.sum_sq += part.sum_sq;
        m.sum_quad += part.sum_quad;
        count += hi - lo;
    };
    if (region == Region::window) {
        add(window.begin(), window.end());
    } else {
        add(0, window.begin());
        add(window.end(), x.size());
    }
    const double mean = m.sum_sq / static_cast<double>(count);
    const double var = std::max(m.sum_quad / static_cast<double>(count) - mean * mean, 0.0);
    cv = mean > 0.0 ? std::sqrt(var) / mean : 0.0;
    return mean;
}

bool near_boundary(const GarchParams& p, const ParameterSpace& space) {
    constexpr double eps = 1e-6;
    if (p.alpha0 <= space.alpha_min * (1.0 + 1e-3) + 1e-12) return true;
    for (double a : p.alphas)
        if (a < eps) return true;
    if (p.s() > 0 && p.sum_beta() > space.beta_sum_max - eps) return true;
    const Eigen::VectorXd theta = p.to_vector();
    for (Eigen::Index i = 0; i < theta.size(); ++i)
        if (theta[i] > space.upper[static_cast<std::size_t>(i)]) return true;
    return false;
}

}  // namespace

FitResult fit_region(std::span<const double> x, const Window& window, Region region,
                     const ParameterSpace& space, const FitOptions& opts) {
    space.validate();
    if (window.n() != x.size()) throw DomainError("window does not match the series length");
    const std::size_t d = space.dim();
    const std::size_t count = region == Region::window ? window.count() : x.size() - window.count();
    if (count < opts.min_obs_per_param * d) {
        std::ostringstream msg;
        msg << "fit region has " << count << " observations; at least "
            << opts.min_obs_per_param * d << " are required";
        throw DomainError(msg.str());
    }

    double cv = 0.0;
    const double m2 = mean_square(x, window, region, cv);
    if (!(m2 > 0.0) || !std::isfinite(m2)) throw FitError("fit region has no variation in X^2");
    if (cv < 1e-6)
        throw FitError("squared observations are constant in the fit region; "
                       "innovations with degenerate zeta^2 cannot be fitted");

    const Reparameterization map(space);
    const auto starts = opts.starts.empty() ? default_starts() : opts.starts;
    const double rd = static_cast<double>(space.r);
    const double sd = static_cast<double>(space.s);

    MinimizeOptions mopts;
    mopts.grad_tol = opts.tol;
    mopts.max_iterations = opts.max_iterations;
    if (opts.fixed_alpha0) {
        if (!(*opts.fixed_alpha0 > space.alpha_min)) throw DomainError("fixed alpha0 must exceed alpha_min");
        mopts.fixed = Eigen::VectorXi::Zero(1);
    }

    Eigen::VectorXd theta_grad;
    Objective objective = [&](const Eigen::VectorXd& u, Eigen::VectorXd& grad) {
        if (!u.allFinite()) return std::numeric_limits<double>::infinity();
        const GarchParams p = map.to_params(u);
        if (!std::isfinite(p.alpha0) || !(p.sum_beta() < 1.0))
            return std::numeric_limits<double>::infinity();
        for (double a : p.alphas)
            if (!std::isfinite(a)) return std::numeric_limits<double>::infinity();
        const double v = neg_loglik_grad(x, window, region, p, theta_grad, opts.init);
        grad = map.jacobian(u).transpose() * theta_grad;
        return v;
    };

    FitResult best;
    best.neg_loglik = std::numeric_limits<double>::infinity();
    std::ostringstream failures;
    for (std::size_t k = 0; k < starts.size(); ++k) {
        const auto [asum, bsum] = starts[k];
        GarchParams start;
        start.alpha0 = opts.fixed_alpha0.value_or(
            std::max(m2 * std::max(1.0 - asum - bsum, 0.05), 2.0 * space.alpha_min));
        start.alphas.assign(space.r, asum / rd);
        start.betas.assign(space.s, space.s > 0 ? std::min(bsum, 0.95 * space.beta_sum_max) / sd : 0.0);
        MinimizeResult res;
        try {
            res = minimize_bfgs(objective, map.to_unconstrained(start), mopts);
        } catch (const DomainError& e) {
            failures << " start " << k << ": " << e.what() << ';';
            continue;
        }
        if (!std::isfinite(res.value)) {
            failures << " start " << k << ": non-finite likelihood;";
            continue;
        }
        if (res.value < best.neg_loglik) {
            best.neg_loglik = res.value;
            best.theta_hat = map.to_params(res.u);
            best.converged = res.converged;
            best.grad_norm = res.grad_norm;
            best.best_start = static_cast<int>(k);
        }
        best.iterations += res.iterations;
    }
    if (best.best_start < 0) throw FitError("every start failed:" + failures.str());
    best.at_boundary = near_boundary(best.theta_hat, space);
    return best;
}

FitResult fit_window(std::span<const double> x, const Window& window, const ParameterSpace& space,
                     const FitOptions& opts) {
    if (window.is_empty()) throw DomainError("cannot fit an empty window");
    return fit_region(x, window, Region::window, space, opts);
}

FitResult fit_complement(std::span<const double> x, const Window& window,
                         const ParameterSpace& space, const FitOptions& opts) {
    return fit_region(x, window, Region::complement, space, opts);
}

}  // namespace gsrww
