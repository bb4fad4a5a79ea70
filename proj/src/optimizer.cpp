#include "gsrww/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace gsrww {

namespace {

Eigen::VectorXd free_mask(const MinimizeOptions& opts, Eigen::Index dim) {
    Eigen::VectorXd mask = Eigen::VectorXd::Ones(dim);
    for (Eigen::Index i = 0; i < opts.fixed.size(); ++i) {
        const int k = opts.fixed[i];
        if (k >= 0 && k < dim) mask[k] = 0.0;
    }
    return mask;
}

}  // namespace

MinimizeResult minimize_bfgs(const Objective& f, const Eigen::VectorXd& start,
                             const MinimizeOptions& opts) {
    const Eigen::Index dim = start.size();
    const Eigen::VectorXd mask = free_mask(opts, dim);
    const auto identity = Eigen::MatrixXd(mask.asDiagonal());

    MinimizeResult res;
    res.u = start;
    Eigen::VectorXd grad(dim);
    res.value = f(res.u, grad);
    grad = grad.cwiseProduct(mask);
    if (!std::isfinite(res.value) || !grad.allFinite()) {
        res.value = std::numeric_limits<double>::infinity();
        res.grad_norm = std::numeric_limits<double>::infinity();
        return res;
    }

    Eigen::MatrixXd inv_h = identity;
    Eigen::VectorXd trial(dim), trial_grad(dim);
    int stalls = 0;
    for (int it = 0; it < opts.max_iterations; ++it) {
        res.grad_norm = grad.norm();
        res.iterations = it;
        if (res.grad_norm < opts.grad_tol) {
            res.converged = true;
            return res;
        }
        Eigen::VectorXd dir = -(inv_h * grad);
        double slope = dir.dot(grad);
        if (!(slope < 0.0)) {
            inv_h = identity;
            dir = -grad;
            slope = dir.dot(grad);
        }
        // Keep the first trial step bounded in the unconstrained coordinates.
        double step = std::min(1.0, 2.0 / std::max(dir.lpNorm<Eigen::Infinity>(), 1e-300));
        bool accepted = false;
        double trial_value = 0.0;
        for (int ls = 0; ls < 50; ++ls) {
            trial = res.u + step * dir;
            trial_value = f(trial, trial_grad);
            if (std::isfinite(trial_value) && trial_grad.allFinite() &&
                trial_value <= res.value + 1e-4 * step * slope) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            ++stalls;
            if (stalls >= 2) break;
            inv_h = identity;
            continue;
        }
        stalls = 0;
        trial_grad = trial_grad.cwiseProduct(mask);
        const Eigen::VectorXd sk = trial - res.u;
        const Eigen::VectorXd yk = trial_grad - grad;
        const double sy = sk.dot(yk);
        const double improvement = res.value - trial_value;
        res.u = trial;
        res.value = trial_value;
        grad = trial_grad;
        if (sy > 1e-12 * sk.norm() * yk.norm()) {
            const double rho = 1.0 / sy;
            const Eigen::MatrixXd left = identity - rho * sk * yk.transpose();
            inv_h = left * inv_h * left.transpose() + rho * sk * sk.transpose();
        }
        // No measurable progress left in double precision.
        if (improvement <= 1e-16 * std::max(1.0, std::abs(res.value)) && sk.norm() < 1e-14) break;
    }
    res.grad_norm = grad.norm();
    res.converged = res.grad_norm < opts.grad_tol;
    if (res.converged || stalls < 2) return res;

    auto fallback = minimize_nelder_mead(f, res.u, opts);
    fallback.iterations += res.iterations;
    fallback.used_fallback = true;
    if (fallback.value <= res.value) return fallback;
    res.used_fallback = true;
    return res;
}

MinimizeResult minimize_nelder_mead(const Objective& f, const Eigen::VectorXd& start,
                                    const MinimizeOptions& opts, int max_evaluations) {
    const Eigen::Index dim = start.size();
    const Eigen::VectorXd mask = free_mask(opts, dim);
    std::vector<Eigen::Index> free;
    for (Eigen::Index i = 0; i < dim; ++i)
        if (mask[i] != 0.0) free.push_back(i);
    const auto m = static_cast<Eigen::Index>(free.size());

    Eigen::VectorXd scratch(dim);
    auto eval = [&](const Eigen::VectorXd& u) {
        const double v = f(u, scratch);
        return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
    };

    std::vector<Eigen::VectorXd> pts(static_cast<std::size_t>(m + 1), start);
    std::vector<double> vals(static_cast<std::size_t>(m + 1));
    for (Eigen::Index k = 0; k < m; ++k) pts[static_cast<std::size_t>(k + 1)][free[static_cast<std::size_t>(k)]] += 0.5;
    for (std::size_t k = 0; k < pts.size(); ++k) vals[k] = eval(pts[k]);
    int evals = static_cast<int>(pts.size());

    std::vector<std::size_t> order(pts.size());
    while (evals < max_evaluations) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](auto a, auto b) { return vals[a] < vals[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second = order[order.size() - 2];
        if (std::abs(vals[worst] - vals[best]) <= 1e-14 * (1.0 + std::abs(vals[best]))) break;

        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(dim);
        for (std::size_t k = 0; k + 1 < order.size(); ++k) centroid += pts[order[k]];
        centroid /= static_cast<double>(m);

        const Eigen::VectorXd refl = centroid + (centroid - pts[worst]);
        const double fr = eval(refl);
        ++evals;
        if (fr < vals[best]) {
            const Eigen::VectorXd exp = centroid + 2.0 * (centroid - pts[worst]);
            const double fe = eval(exp);
            ++evals;
            if (fe < fr) {
                pts[worst] = exp;
                vals[worst] = fe;
            } else {
                pts[worst] = refl;
                vals[worst] = fr;
            }
        } else if (fr < vals[second]) {
            pts[worst] = refl;
            vals[worst] = fr;
        } else {
            const Eigen::VectorXd con = centroid + 0.5 * (pts[worst] - centroid);
            const double fc = eval(con);
            ++evals;
            if (fc < vals[worst]) {
                pts[worst] = con;
                vals[worst] = fc;
            } else {
                for (std::size_t k = 0; k < pts.size(); ++k) {
                    if (k == best) continue;
                    pts[k] = pts[best] + 0.5 * (pts[k] - pts[best]);
                    vals[k] = eval(pts[k]);
                    ++evals;
                }
            }
        }
    }
    const auto it = std::min_element(vals.begin(), vals.end());
    MinimizeResult res;
    res.u = pts[static_cast<std::size_t>(it - vals.begin())];
    Eigen::VectorXd grad(dim);
    res.value = f(res.u, grad);
    res.grad_norm = grad.cwiseProduct(mask).norm();
    res.converged = res.grad_norm < opts.grad_tol;
    res.iterations = evals;
    return res;
}

}  // namespace gsrww
