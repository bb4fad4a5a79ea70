#include "gsrww/likelihood.hpp"

#include "gsrww/errors.hpp"
#include "gsrww/indexing.hpp"

#include <cmath>
#include <string>

namespace gsrww {

Window::Window(double tau1, double tau2, std::size_t n)
    : Window(tau1, tau2, n, floor_index(n, tau1), floor_index(n, tau2)) {
    if (!(tau1 < tau2)) throw DomainError("window needs tau1 < tau2");
    if (is_empty()) throw DomainError("window contains no observations");
}

Window::Window(double tau1, double tau2, std::size_t n, std::size_t begin, std::size_t end)
    : tau1_(tau1), tau2_(tau2), n_(n), begin_(begin), end_(end) {
    if (n == 0) throw DomainError("window over an empty series");
    if (!(tau1 >= 0.0 && tau2 <= 1.0 && tau1 <= tau2))
        throw DomainError("window fractions must satisfy 0 <= tau1 <= tau2 <= 1");
}

Window Window::from_grid(std::size_t j, std::size_t k, std::size_t grid, std::size_t n) {
    if (grid == 0 || j >= k || k > grid) throw DomainError("invalid grid window");
    return {static_cast<double>(j) / static_cast<double>(grid),
            static_cast<double>(k) / static_cast<double>(grid), n, j * n / grid, k * n / grid};
}

Window Window::empty(std::size_t n) { return {0.0, 0.0, n, 0, 0}; }

namespace {

enum Order { kValue = 0, kGradient = 1, kHessian = 2 };

struct Accumulator {
    double value = 0.0;
    Eigen::VectorXd grad;
    Eigen::MatrixXd hess;
    Eigen::MatrixXd outer;
    Eigen::VectorXd score_sum;
    std::size_t count = 0;
    std::vector<double> sigma2;
    Eigen::MatrixXd scores;  // filled only when requested
};

void check_inputs(std::span<const double> x, const Window& window, const GarchParams& params) {
    if (window.n() != x.size())
        throw DomainError("window built for length " + std::to_string(window.n()) +
                          " used on a series of length " + std::to_string(x.size()));
    if (params.r() == 0) throw DomainError("GARCH order r must be positive");
    if (!(params.alpha0 > 0.0)) throw DomainError("alpha0 must be positive");
    if (!(params.sum_beta() < 1.0)) throw DomainError("sum of GARCH coefficients must be below 1");
}

// One forward pass of the truncated recursion, accumulating the loss and its
// derivatives over the selected region.
template <int kOrder>
Accumulator run(std::span<const double> x, const Window& window, Region region,
                const GarchParams& params, PresampleInit init, bool keep_sigma2,
                bool keep_scores) {
    check_inputs(x, window, params);
    const std::size_t n = x.size();
    const std::size_t r = params.r();
    const std::size_t s = params.s();
    const std::size_t d = params.dim();
    const double a0 = params.alpha0;
    const double bsum = params.sum_beta();

    const std::size_t lo = window.begin();
    const std::size_t hi = window.end();
    const std::size_t last = region == Region::window ? hi : n;
    auto included = [&](std::size_t i) {
        const bool inside = i >= lo && i < hi;
        return region == Region::window ? inside : !inside;
    };

    // Pre-sample sigma^2 and its derivatives in theta.
    double pre = a0;
    Eigen::VectorXd pre_g = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(d));
    Eigen::MatrixXd pre_h = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    if (init == PresampleInit::fixed_point) {
        const double q = 1.0 / (1.0 - bsum);
        pre = a0 * q;
        pre_g[0] = q;
        for (std::size_t k = 0; k < s; ++k) {
            const auto bk = static_cast<Eigen::Index>(1 + r + k);
            pre_g[bk] = a0 * q * q;
            pre_h(0, bk) = pre_h(bk, 0) = q * q;
            for (std::size_t l = 0; l < s; ++l)
                pre_h(bk, static_cast<Eigen::Index>(1 + r + l)) = 2.0 * a0 * q * q * q;
        }
    } else {
        pre_g[0] = 1.0;
    }

    // Lag histories, most recent first: sigma^2, d/dtheta, d2/dtheta2.
    std::vector<double> hs(s, pre);
    std::vector<double> hg(kOrder >= kGradient ? s * d : 0);
    std::vector<double> hh(kOrder >= kHessian ? s * d * d : 0);
    for (std::size_t k = 0; k < s; ++k) {
        if constexpr (kOrder >= kGradient)
            for (std::size_t a = 0; a < d; ++a) hg[k * d + a] = pre_g[static_cast<Eigen::Index>(a)];
        if constexpr (kOrder >= kHessian)
            for (std::size_t a = 0; a < d; ++a)
                for (std::size_t b = 0; b < d; ++b)
                    hh[(k * d + a) * d + b] = pre_h(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
    }

    Accumulator acc;
    const auto di = static_cast<Eigen::Index>(d);
    if constexpr (kOrder >= kGradient) acc.grad = Eigen::VectorXd::Zero(di);
    if constexpr (kOrder >= kHessian) {
        acc.hess = Eigen::MatrixXd::Zero(di, di);
        acc.outer = Eigen::MatrixXd::Zero(di, di);
        acc.score_sum = Eigen::VectorXd::Zero(di);
    }
    if (keep_sigma2) acc.sigma2.reserve(last);
    std::size_t score_cols = 0;
    if (keep_scores) {
        const std::size_t contributing =
            region == Region::window ? hi - lo : n - (hi - lo);
        acc.scores.resize(di, static_cast<Eigen::Index>(contributing));
    }

    std::vector<double> g(kOrder >= kGradient ? d : 0);
    std::vector<double> h(kOrder >= kHessian ? d * d : 0);

    for (std::size_t i = 0; i < last; ++i) {
        double s2 = a0;
        for (std::size_t j = 0; j < r; ++j)
            if (i > j) s2 += params.alphas[j] * x[i - j - 1] * x[i - j - 1];
        for (std::size_t k = 0; k < s; ++k) s2 += params.betas[k] * hs[k];

        if constexpr (kOrder >= kGradient) {
            std::fill(g.begin(), g.end(), 0.0);
            g[0] = 1.0;
            for (std::size_t j = 0; j < r; ++j)
                if (i > j) g[1 + j] = x[i - j - 1] * x[i - j - 1];
            for (std::size_t k = 0; k < s; ++k) {
                g[1 + r + k] += hs[k];
                const double bk = params.betas[k];
                const double* gk = &hg[k * d];
                for (std::size_t a = 0; a < d; ++a) g[a] += bk * gk[a];
            }
        }
        if constexpr (kOrder >= kHessian) {
            std::fill(h.begin(), h.end(), 0.0);
            for (std::size_t k = 0; k < s; ++k) {
                const double bk = params.betas[k];
                const double* hk = &hh[k * d * d];
                for (std::size_t a = 0; a < d * d; ++a) h[a] += bk * hk[a];
                const std::size_t col = 1 + r + k;
                const double* gk = &hg[k * d];
                for (std::size_t a = 0; a < d; ++a) {
                    h[col * d + a] += gk[a];
                    h[a * d + col] += gk[a];
                }
            }
        }

        if (keep_sigma2) acc.sigma2.push_back(s2);

        if (included(i)) {
            const double x2 = x[i] * x[i];
            const double ratio = x2 / s2;
            acc.value += 0.5 * (ratio + std::log(s2));
            if constexpr (kOrder >= kGradient) {
                const double c1 = 0.5 / s2 * (1.0 - ratio);
                for (std::size_t a = 0; a < d; ++a) acc.grad[static_cast<Eigen::Index>(a)] += c1 * g[a];
                if constexpr (kOrder >= kHessian) {
                    const double c2 = 0.5 / (s2 * s2) * (2.0 * ratio - 1.0);
                    const double c1sq = c1 * c1;
                    for (std::size_t a = 0; a < d; ++a) {
                        const auto ai = static_cast<Eigen::Index>(a);
                        acc.score_sum[ai] += c1 * g[a];
                        for (std::size_t b = 0; b < d; ++b) {
                            const auto bi = static_cast<Eigen::Index>(b);
                            acc.hess(ai, bi) += c1 * h[a * d + b] + c2 * g[a] * g[b];
                            acc.outer(ai, bi) += c1sq * g[a] * g[b];
                        }
                    }
                    if (keep_scores) {
                        for (std::size_t a = 0; a < d; ++a)
                            acc.scores(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(score_cols)) = c1 * g[a];
                        ++score_cols;
                    }
                }
            }
            ++acc.count;
        }

        // Shift histories.
        if (s > 0) {
            for (std::size_t k = s - 1; k > 0; --k) {
                hs[k] = hs[k - 1];
                if constexpr (kOrder >= kGradient)
                    std::copy_n(&hg[(k - 1) * d], d, &hg[k * d]);
                if constexpr (kOrder >= kHessian)
                    std::copy_n(&hh[(k - 1) * d * d], d * d, &hh[k * d * d]);
            }
            hs[0] = s2;
            if constexpr (kOrder >= kGradient) std::copy_n(g.data(), d, hg.data());
            if constexpr (kOrder >= kHessian) std::copy_n(h.data(), d * d, hh.data());
        }
    }
    return acc;
}

// GARCH(1,1) value+gradient without the generic lag bookkeeping.
double run_garch11_grad(std::span<const double> x, const Window& window, Region region,
                        const GarchParams& params, PresampleInit init, Eigen::VectorXd& gradient) {
    check_inputs(x, window, params);
    const std::size_t n = x.size();
    const double a0 = params.alpha0;
    const double a1 = params.alphas[0];
    const double b1 = params.betas[0];
    const std::size_t lo = window.begin();
    const std::size_t hi = window.end();
    const std::size_t last = region == Region::window ? hi : n;

    double s2_prev;
    double g0, g1, g2;  // d sigma^2 / d(alpha0, alpha1, beta1) of the previous step
    if (init == PresampleInit::fixed_point) {
        const double q = 1.0 / (1.0 - b1);
        s2_prev = a0 * q;
        g0 = q;
        g1 = 0.0;
        g2 = a0 * q * q;
    } else {
        s2_prev = a0;
        g0 = 1.0;
        g1 = 0.0;
        g2 = 0.0;
    }
    double x2_prev = 0.0;
    double value = 0.0, d0 = 0.0, d1 = 0.0, d2 = 0.0;
    auto step = [&](std::size_t i, bool add) {
        const double s2 = a0 + a1 * x2_prev + b1 * s2_prev;
        const double n0 = 1.0 + b1 * g0;
        const double n1 = x2_prev + b1 * g1;
        const double n2 = s2_prev + b1 * g2;
        const double x2 = x[i] * x[i];
        if (add) {
            const double inv = 1.0 / s2;
            const double ratio = x2 * inv;
            value += 0.5 * (ratio + std::log(s2));
            const double c1 = 0.5 * inv * (1.0 - ratio);
            d0 += c1 * n0;
            d1 += c1 * n1;
            d2 += c1 * n2;
        }
        s2_prev = s2;
        g0 = n0;
        g1 = n1;
        g2 = n2;
        x2_prev = x2;
    };
    if (region == Region::window) {
        for (std::size_t i = 0; i < lo; ++i) step(i, false);
        for (std::size_t i = lo; i < hi; ++i) step(i, true);
    } else {
        for (std::size_t i = 0; i < lo; ++i) step(i, true);
        for (std::size_t i = lo; i < hi; ++i) step(i, false);
        for (std::size_t i = hi; i < last; ++i) step(i, true);
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    gradient.resize(3);
    gradient << d0 * inv_n, d1 * inv_n, d2 * inv_n;
    return value * inv_n;
}

void require_nonempty(const Window& window, Region region) {
    if (region == Region::window && window.is_empty())
        throw DomainError("likelihood window contains no observations");
    if (region == Region::complement && window.count() == window.n())
        throw DomainError("window complement contains no observations");
}

}  // namespace

std::vector<double> sigma2_path(std::span<const double> x_squared, const GarchParams& params,
                                PresampleInit init) {
    const std::size_t n = x_squared.size();
    const std::size_t r = params.r();
    const std::size_t s = params.s();
    const double pre = init == PresampleInit::fixed_point
                           ? params.alpha0 / (1.0 - params.sum_beta())
                           : params.alpha0;
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        double v = params.alpha0;
        for (std::size_t j = 0; j < r; ++j)
            if (i > j) v += params.alphas[j] * x_squared[i - j - 1];
        for (std::size_t k = 0; k < s; ++k) v += params.betas[k] * (i > k ? out[i - k - 1] : pre);
        out[i] = v;
    }
    return out;
}

double neg_loglik(std::span<const double> x, const Window& window, const GarchParams& params,
                  PresampleInit init) {
    return neg_loglik_region(x, window, Region::window, params, init);
}

double neg_loglik_region(std::span<const double> x, const Window& window, Region region,
                         const GarchParams& params, PresampleInit init) {
    require_nonempty(window, region);
    const auto acc = run<kValue>(x, window, region, params, init, false, false);
    return acc.value / static_cast<double>(x.size());
}

double neg_loglik_grad(std::span<const double> x, const Window& window, Region region,
                       const GarchParams& params, Eigen::VectorXd& gradient, PresampleInit init) {
    require_nonempty(window, region);
    if (params.r() == 1 && params.s() == 1)
        return run_garch11_grad(x, window, region, params, init, gradient);
    const auto acc = run<kGradient>(x, window, region, params, init, false, false);
    const double inv_n = 1.0 / static_cast<double>(x.size());
    gradient = acc.grad * inv_n;
    return acc.value * inv_n;
}

LikEval neg_loglik_grad_hess(std::span<const double> x, const Window& window,
                             const GarchParams& params, Region region, PresampleInit init) {
    require_nonempty(window, region);
    auto acc = run<kHessian>(x, window, region, params, init, true, false);
    const double inv_n = 1.0 / static_cast<double>(x.size());
    LikEval out;
    out.value = acc.value * inv_n;
    out.gradient = acc.grad * inv_n;
    out.hessian = 0.5 * (acc.hess + acc.hess.transpose()) * inv_n;
    out.per_obs_sigma2 = std::move(acc.sigma2);
    return out;
}

std::vector<double> per_observation_loss(std::span<const double> x, const GarchParams& params,
                                         PresampleInit init) {
    std::vector<double> x2(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) x2[i] = x[i] * x[i];
    const auto s2 = sigma2_path(x2, params, init);
    std::vector<double> loss(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) loss[i] = 0.5 * (x2[i] / s2[i] + std::log(s2[i]));
    return loss;
}

DerivativeSums derivative_sums(std::span<const double> x, const Window& window, Region region,
                               const GarchParams& params, PresampleInit init) {
    require_nonempty(window, region);
    auto acc = run<kHessian>(x, window, region, params, init, false, false);
    DerivativeSums out;
    out.hessian_sum = 0.5 * (acc.hess + acc.hess.transpose());
    out.score_outer_sum = 0.5 * (acc.outer + acc.outer.transpose());
    out.score_sum = acc.score_sum;
    out.count = acc.count;
    return out;
}

Eigen::MatrixXd score_contributions(std::span<const double> x, const Window& window,
                                    Region region, const GarchParams& params,
                                    PresampleInit init) {
    require_nonempty(window, region);
    auto acc = run<kHessian>(x, window, region, params, init, false, true);
    return acc.scores;
}

}  // namespace gsrww
