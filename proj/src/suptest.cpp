#include "gsrww/suptest.hpp"

#include "gsrww/errors.hpp"
#include "gsrww/kernels.hpp"
#include "gsrww/normal_quantile.hpp"
#include "gsrww/parallel.hpp"
#include "gsrww/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace gsrww {

std::optional<std::size_t> ScanResult::argmax() const {
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < windows.size(); ++i) {
        if (!windows[i].ok) continue;
        if (!best || windows[i].statistic > windows[*best].statistic) best = i;
    }
    return best;
}

double ScanResult::sup_statistic() const {
    const auto best = argmax();
    return best ? windows[*best].statistic : -std::numeric_limits<double>::infinity();
}

namespace {

void evaluate_window(std::span<const double> x, const Eigen::VectorXd& h, const SearchGrid& grid,
                     const ScanOptions& opts, WindowStat& out) {
    const std::size_t n = x.size();
    const Window window = Window::from_grid(out.j, out.k, grid.L, n);
    const FitResult inside = fit_window(x, window, opts.space, opts.fit);
    const FitResult outside = fit_complement(x, window, opts.space, opts.fit);
    const auto info = estimate_v_i(x, window, outside.theta_hat, opts.fit.init);
    const auto sw = sandwich(info.v_bar, info.i_bar, h);
    const double sigma_h = sw.sigma_h(0, 0);
    if (!(sigma_h > 0.0) || !std::isfinite(sigma_h))
        throw InferenceError("projected covariance H'Sigma H is not positive");

    out.theta_hat = inside.theta_hat;
    out.theta_bar = outside.theta_hat;
    out.sigma_bar = sw.sigma_bar;
    out.sigma_h = sigma_h;
    out.reference = opts.null_ref.mode == NullReference::Mode::fixed
                        ? opts.null_ref.value
                        : h.dot(outside.theta_hat.to_vector());
    const double span = window.span();
    out.statistic = std::sqrt(static_cast<double>(n)) * std::pow(span, grid.chi) *
                    (h.dot(inside.theta_hat.to_vector()) - out.reference) / std::sqrt(sigma_h);
    out.ok = true;
}

}  // namespace

ScanResult scan(std::span<const double> x, const Eigen::VectorXd& direction,
                const SearchGrid& grid, const ScanOptions& opts) {
    grid.validate();
    opts.space.validate();
    if (static_cast<std::size_t>(direction.size()) != opts.space.dim())
        throw ConfigError("direction H must have r+s+1 entries");
    if (direction.norm() == 0.0) throw ConfigError("direction H must be non-zero");
    if (x.size() < grid.L) throw ConfigError("series is shorter than the grid count L");

    ScanResult result;
    result.n = x.size();
    result.direction = direction;
    result.grid = grid;
    result.null_ref = opts.null_ref;
    for (const auto& [j, k] : grid.admissible_pairs()) {
        WindowStat w;
        w.j = j;
        w.k = k;
        w.tau1 = static_cast<double>(j) / static_cast<double>(grid.L);
        w.tau2 = static_cast<double>(k) / static_cast<double>(grid.L);
        result.windows.push_back(std::move(w));
    }

    parallel_for(result.windows.size(), opts.threads, [&](std::size_t i) {
        WindowStat& w = result.windows[i];
        try {
            evaluate_window(x, direction, grid, opts, w);
        } catch (const Error& e) {
            w.ok = false;
            w.failure = e.what();
        }
    });

    result.failures = static_cast<std::size_t>(
        std::count_if(result.windows.begin(), result.windows.end(), [](const auto& w) { return !w.ok; }));
    if (static_cast<double>(result.failures) >
        opts.max_failure_fraction * static_cast<double>(result.windows.size())) {
        std::ostringstream msg;
        msg << result.failures << " of " << result.windows.size() << " windows failed to fit";
        for (const auto& w : result.windows)
            if (!w.ok) {
                msg << "; first failure at (" << w.tau1 << ", " << w.tau2 << "): " << w.failure;
                break;
            }
        throw ScanError(msg.str());
    }
    return result;
}

namespace {

struct LimitPlan {
    std::vector<std::size_t> bounds;
    std::vector<std::size_t> widths;
    std::vector<double> weights;
};

LimitPlan plan_limit(std::size_t n, const SearchGrid& grid) {
    LimitPlan plan;
    plan.bounds.resize(grid.L + 1);
    for (std::size_t j = 0; j <= grid.L; ++j) plan.bounds[j] = j * n / grid.L;
    plan.widths = grid.admissible_widths();
    const double root_n = std::sqrt(static_cast<double>(n));
    for (std::size_t w : plan.widths) {
        const double span = static_cast<double>(w) / static_cast<double>(grid.L);
        plan.weights.push_back(1.0 / (root_n * std::pow(span, 1.0 - grid.chi)));
    }
    return plan;
}

double sup_from_plan(std::span<const double> eps, const LimitPlan& plan, std::vector<double>& sums,
                     std::vector<double>& prefix) {
    const std::size_t blocks = plan.bounds.size() - 1;
    sums.resize(blocks);
    prefix.resize(blocks + 1);
    kernels::block_sums(eps, plan.bounds, sums);
    prefix[0] = 0.0;
    for (std::size_t b = 0; b < blocks; ++b) prefix[b + 1] = prefix[b] + sums[b];
    return kernels::grid_pair_sup(prefix, plan.widths, plan.weights);
}

}  // namespace

double limit_sup(std::span<const double> eps, const SearchGrid& grid) {
    grid.validate();
    if (eps.size() < grid.L) throw DomainError("need at least L innovations");
    const auto plan = plan_limit(eps.size(), grid);
    std::vector<double> sums, prefix;
    return sup_from_plan(eps, plan, sums, prefix);
}

LimitDistribution::LimitDistribution(std::size_t n, const SearchGrid& grid,
                                     std::size_t replications, std::uint64_t seed,
                                     std::size_t threads) {
    grid.validate();
    if (replications < 1000) throw ConfigError("critical values need at least 1000 replications");
    if (n < grid.L) throw ConfigError("series length must be at least L");
    const auto plan = plan_limit(n, grid);
    sups_.resize(replications);
    parallel_for(replications, threads, [&](std::size_t k) {
        thread_local std::vector<double> eps, sums, prefix;
        auto engine = make_engine(derive_seed(seed, k));
        std::normal_distribution<double> normal(0.0, 1.0);
        eps.resize(n);
        for (double& e : eps) e = normal(engine);
        sups_[k] = sup_from_plan(eps, plan, sums, prefix);
    });
    std::sort(sups_.begin(), sups_.end());
}

double LimitDistribution::quantile(double delta) const {
    if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("level delta must lie in (0,1)");
    const auto count = static_cast<double>(sups_.size());
    auto rank = static_cast<std::size_t>(std::floor(count * delta + 1e-9));
    rank = std::clamp<std::size_t>(rank, 1, sups_.size());
    return sups_[rank - 1];
}

double critical_value(std::size_t n, const SearchGrid& grid, std::size_t replications,
                      double delta, std::uint64_t seed, std::size_t threads) {
    return LimitDistribution(n, grid, replications, seed, threads).quantile(delta);
}

TestReport decide_and_date(const ScanResult& scan_result, double q_hat, std::span<const double> x,
                           const ScanOptions& opts, const DecideOptions& decide) {
    if (scan_result.windows.empty()) throw DomainError("scan produced no windows");
    if (x.size() != scan_result.n) throw DomainError("series does not match the scan");
    const auto best = scan_result.argmax();
    if (!best) throw ScanError("no window of the scan was fitted successfully");

    TestReport report;
    report.n = scan_result.n;
    report.per_window = scan_result.windows;
    report.failures = scan_result.failures;
    report.sup_statistic = scan_result.windows[*best].statistic;
    report.critical_value = q_hat;
    report.delta = decide.delta;
    report.ci_level = decide.ci_level;
    report.null_ref = scan_result.null_ref;
    report.null_reference = scan_result.windows[*best].reference;
    report.reject = report.sup_statistic > q_hat;
    if (!report.reject) return report;

    const WindowStat& dated = scan_result.windows[*best];
    report.dated_window = std::make_pair(dated.tau1, dated.tau2);
    report.theta_out = dated.theta_bar;

    const Window window = Window::from_grid(dated.j, dated.k, scan_result.grid.L, scan_result.n);
    GarchParams refit;
    try {
        refit = fit_window(x, window, opts.space, opts.fit).theta_hat;
    } catch (const Error& e) {
        report.diagnostics = std::string("refit on the dated window failed: ") + e.what();
        return report;
    }
    report.theta_refit = refit;

    const double z = normal_quantile(0.5 * (1.0 + decide.ci_level));
    const double scale = static_cast<double>(scan_result.n) * window.span();
    const Eigen::VectorXd theta = refit.to_vector();
    std::vector<ConfidenceInterval> ci(static_cast<std::size_t>(theta.size()));
    for (Eigen::Index i = 0; i < theta.size(); ++i) {
        const double half = z * std::sqrt(std::max(dated.sigma_bar(i, i), 0.0) / scale);
        ci[static_cast<std::size_t>(i)] = {theta[i] - half, theta[i] + half};
    }
    report.confidence_intervals = std::move(ci);
    return report;
}

}  // namespace gsrww
