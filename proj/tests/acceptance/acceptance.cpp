// Acceptance checks: one PASS/FAIL line per criterion, non-zero exit if any fail.

#include "gsrww/covariance.hpp"
#include "gsrww/grid.hpp"
#include "gsrww/harness.hpp"
#include "gsrww/likelihood.hpp"
#include "gsrww/model.hpp"
#include "gsrww/qmle.hpp"
#include "gsrww/suptest.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

using namespace gsrww;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void run(int id, const char* name, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failures;
    std::printf("[%s] criterion %d %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", id, name,
                o.detail.c_str(), secs);
    std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double binomial_sd(double p, std::size_t reps) {
    return std::sqrt(p * (1.0 - p) / static_cast<double>(reps));
}

StudyConfig desk_config(Scenario sc, std::size_t n) {
    StudyConfig cfg;
    cfg.scenario = sc;
    cfg.n_list = {n};
    cfg.delta_list = {0.95};
    cfg.replications = 200;
    cfg.critical_replications = 10'000;
    cfg.threads = 0;
    return cfg;
}

Outcome critical_values() {
    const auto t0 = std::chrono::steady_clock::now();
    const LimitDistribution lim(1000, SearchGrid{30, 0.1, 0.1, 0.5}, 10'000, 1, 1);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const double q90 = lim.quantile(0.90), q95 = lim.quantile(0.95);
    const bool ok = std::abs(q90 - 3.031) <= 0.10 && std::abs(q95 - 3.285) <= 0.10 && secs < 60.0;
    return {ok, fmt("q90=%.3f (3.031+-0.10) q95=%.3f (3.285+-0.10) single-thread %.1fs", q90, q95,
                    secs)};
}

Outcome size_case_ii() {
    const auto cfg = desk_config(Scenario::case_ii, 500);
    const auto cells = size_study(cfg);
    const auto& c = cells.front();
    const double sd = binomial_sd(0.903, c.replications);
    const bool ok = std::abs(c.rate - 0.903) <= 3.0 * sd;
    return {ok, fmt("acceptance=%.3f over %zu reps (aborted %zu), target 0.903 +- %.3f", c.rate,
                    c.replications, c.aborted, 3.0 * sd)};
}

Outcome power_case_ii() {
    auto cfg = desk_config(Scenario::case_ii, 500);
    cfg.magnitude_list = {0.2};
    cfg.span_list = {0.2};
    const auto c = power_study(cfg).front();
    const double sd = binomial_sd(0.950, c.replications);
    const bool ok = std::abs(c.rate - 0.950) <= 3.0 * sd;
    return {ok, fmt("rejection=%.3f over %zu reps (aborted %zu), target 0.950 +- %.3f", c.rate,
                    c.replications, c.aborted, 3.0 * sd)};
}

Outcome power_gap_case_i() {
    auto cfg = desk_config(Scenario::case_i, 500);
    cfg.magnitude_list = {0.05, 0.2};
    cfg.span_list = {0.1};
    const auto cells = power_study(cfg);
    double lo = 0, hi = 0;
    std::size_t nlo = 1, nhi = 1, aborted = 0;
    for (const auto& c : cells) {
        aborted += c.aborted;
        if (c.magnitude < 0.1) {
            lo = c.rate;
            nlo = c.replications;
        } else {
            hi = c.rate;
            nhi = c.replications;
        }
    }
    const double diff = hi - lo;
    const double sd = std::hypot(binomial_sd(hi, nhi), binomial_sd(lo, nlo));
    const bool ok = diff >= 0.3 - 3.0 * sd;
    return {ok, fmt("rej(0.2)=%.3f rej(0.05)=%.3f diff=%.3f, need >= 0.3 - 3sd = %.3f (aborted %zu)",
                    hi, lo, diff, 0.3 - 3.0 * sd, aborted)};
}

Outcome qmle_rate() {
    const auto truth = GarchParams::garch11(0.3, 0.4, 0.5);
    const auto space = ParameterSpace::garch(1, 1);
    auto median_error = [&](std::size_t n) {
        std::vector<double> err;
        for (std::uint64_t rep = 0; rep < 100; ++rep) {
            const auto sim = simulate_garch(truth, n, InnovationDist::normal(),
                                            derive_seed(n, rep));
            const auto fit = fit_window(sim.x, Window::full(n), space);
            err.push_back((fit.theta_hat.to_vector() - truth.to_vector()).cwiseAbs().sum());
        }
        std::nth_element(err.begin(), err.begin() + 50, err.end());
        const double upper = err[50];
        std::nth_element(err.begin(), err.begin() + 49, err.end());
        return 0.5 * (upper + err[49]);
    };
    const double m4 = median_error(4000), m16 = median_error(16000);
    const double ratio = m4 / m16;
    return {ratio >= 1.5, fmt("median L1 error %.4f (n=4000) vs %.4f (n=16000), ratio %.2f >= 1.5",
                              m4, m16, ratio)};
}

Outcome derivatives() {
    std::mt19937_64 eng(6);
    std::uniform_real_distribution<double> u(0.05, 0.4);
    double worst_g = 0.0, worst_h = 0.0;
    for (int inst = 0; inst < 20; ++inst) {
        const auto truth = GarchParams::garch11(0.2 + u(eng), u(eng), 0.3 + u(eng));
        const auto sim = simulate_garch(truth, 500, InnovationDist::normal(), 900 + inst);
        const auto p = GarchParams::garch11(0.2 + u(eng), u(eng), 0.3 + u(eng));
        const Window w(0.0, 1.0, 500);
        const auto ev = neg_loglik_grad_hess(sim.x, w, p);
        const Eigen::VectorXd th = p.to_vector();
        const double h = 1e-6;
        Eigen::VectorXd fd(3);
        Eigen::MatrixXd fdh(3, 3);
        for (int k = 0; k < 3; ++k) {
            Eigen::VectorXd a = th, b = th;
            a[k] += h;
            b[k] -= h;
            const auto pa = GarchParams::from_vector(a, 1, 1), pb = GarchParams::from_vector(b, 1, 1);
            fd[k] = (neg_loglik(sim.x, w, pa) - neg_loglik(sim.x, w, pb)) / (2 * h);
            Eigen::VectorXd ga, gb;
            neg_loglik_grad(sim.x, w, Region::window, pa, ga);
            neg_loglik_grad(sim.x, w, Region::window, pb, gb);
            fdh.col(k) = (ga - gb) / (2 * h);
        }
        worst_g = std::max(worst_g, (ev.gradient - fd).norm() / fd.norm());
        worst_h = std::max(worst_h, (ev.hessian - fdh).norm() / fdh.norm());
    }
    return {worst_g < 1e-5 && worst_h < 1e-4,
            fmt("max rel error gradient %.2e (<1e-5), hessian %.2e (<1e-4)", worst_g, worst_h)};
}

Outcome information_identity() {
    const auto truth = GarchParams::garch11(0.3, 0.4, 0.5);
    const auto sim = simulate_garch(truth, 4000, InnovationDist::normal(), 7007);
    const Window w(0.0, 0.25, 4000);
    const auto fit = fit_complement(sim.x, w, ParameterSpace::garch(1, 1));
    const auto est = estimate_v_i(sim.x, w, fit.theta_hat);
    const double rel = (est.i_bar - est.v_bar).norm() / est.v_bar.norm();
    return {rel < 0.15, fmt("||I-V||_F/||V||_F = %.3f at complement size 3000 (<0.15)", rel)};
}

Outcome truncation() {
    const auto truth = GarchParams::garch11(0.3, 0.4, 0.5);
    const auto sim = simulate_garch(truth, 6000, InnovationDist::normal(), 8008);
    const std::vector<double> tail(sim.x.begin() + 5000, sim.x.end());
    double worst = 0.0;
    for (const auto& p : {truth, GarchParams::garch11(0.28, 0.42, 0.52),
                          GarchParams::garch11(0.32, 0.38, 0.48)}) {
        const auto cut = per_observation_loss(tail, p);
        const auto full = per_observation_loss(sim.x, p);
        for (std::size_t i = 199; i < tail.size(); ++i)
            worst = std::max(worst, std::abs(cut[i] - full[5000 + i]));
    }
    return {worst < 1e-8, fmt("max |diff| from index 200 on = %.2e (<1e-8)", worst)};
}

Outcome oracles() {
    std::mt19937_64 eng(9);
    std::uniform_real_distribution<double> u(0.05, 0.45);
    std::exponential_distribution<double> ex(1.0);
    double sig_err = 0.0;
    for (int rep = 0; rep < 50; ++rep) {
        const auto p = GarchParams::garch11(u(eng), u(eng), u(eng) * 2.0);
        std::vector<double> x2(30);
        for (auto& v : x2) v = ex(eng);
        const auto s = sigma2_path(x2, p);
        for (std::size_t i = 0; i < x2.size(); ++i) {
            double ref = p.alpha0 / (1.0 - p.betas[0]), bk = 1.0;
            for (std::size_t k = 0; k < i; ++k, bk *= p.betas[0]) ref += p.alphas[0] * bk * x2[i - 1 - k];
            sig_err = std::max(sig_err, std::abs(s[i] - ref) / std::max(1.0, ref));
        }
    }
    std::normal_distribution<double> z;
    double sand_err = 0.0;
    for (int rep = 0; rep < 50; ++rep) {
        Eigen::MatrixXd a(3, 3), b(3, 3);
        for (int i = 0; i < 9; ++i) {
            a(i) = z(eng);
            b(i) = z(eng);
        }
        const Eigen::MatrixXd v = a * a.transpose() + 0.5 * Eigen::MatrixXd::Identity(3, 3);
        const Eigen::MatrixXd inf = b * b.transpose() + 0.5 * Eigen::MatrixXd::Identity(3, 3);
        const Eigen::MatrixXd ref = v.inverse() * inf * v.inverse();
        const auto s = sandwich(v, inf, Eigen::MatrixXd::Identity(3, 3));
        sand_err = std::max(sand_err, (s.sigma_bar - ref).cwiseAbs().maxCoeff() /
                                          std::max(1.0, ref.cwiseAbs().maxCoeff()));
    }
    bool counts_ok = true;
    for (std::size_t L : {10u, 17u, 30u, 50u})
        for (double kap : {0.1, 0.2, 0.3}) {
            const SearchGrid g{L, kap, 0.1, 0.5};
            std::size_t brute = 0;
            for (std::size_t j = 0; j <= L; ++j)
                for (std::size_t k = j + 1; k <= L; ++k)
                    if (static_cast<double>(k - j) >= kap * L - 1e-9 &&
                        static_cast<double>(k - j) <= 0.9 * L + 1e-9)
                        ++brute;
            counts_ok = counts_ok && g.admissible_pairs().size() == brute;
        }
    const bool ok = sig_err < 1e-12 && sand_err < 1e-10 && counts_ok &&
                    SearchGrid{10, 0.1, 0.1, 0.5}.admissible_pairs().size() == 54;
    return {ok, fmt("sigma2 err %.1e (<1e-12), sandwich err %.1e (<1e-10), pair counts %s", sig_err,
                    sand_err, counts_ok ? "exact" : "MISMATCH")};
}

Outcome dating() {
    auto cfg = desk_config(Scenario::case_ii, 2000);
    cfg.replications = 100;
    const LimitDistribution limit = study_limit(cfg, 2000);
    const double q = limit.quantile(0.95);
    std::size_t rejecting = 0, hits = 0, aborted = 0;
    for (std::size_t rep = 0; rep < cfg.replications; ++rep) {
        const auto r = run_replication(cfg, 2000, 0.2, 0.2, rep);
        if (r.aborted) {
            ++aborted;
            continue;
        }
        if (!(r.sup_statistic > q) || !r.argmax_window) continue;
        ++rejecting;
        const auto [t1, t2] = *r.argmax_window;
        if (t1 < 0.7 && t2 > 0.5) ++hits;
    }
    const double frac = rejecting ? static_cast<double>(hits) / static_cast<double>(rejecting) : 0.0;
    return {rejecting > 0 && frac >= 0.9,
            fmt("dated window meets (0.5,0.7) in %zu of %zu rejecting runs (%.3f >= 0.90), aborted %zu",
                hits, rejecting, frac, aborted)};
}

}  // namespace

int main() {
    run(1, "critical-value quantiles", critical_values);
    run(2, "size, case ii, n=500", size_case_ii);
    run(3, "power, case ii, n=500, delta*=0.2, span 0.2", power_case_ii);
    run(4, "power gap, case i, n=500, span 0.1", power_gap_case_i);
    run(5, "QMLE sqrt-n rate", qmle_rate);
    run(6, "analytic derivatives", derivatives);
    run(7, "gaussian information identity", information_identity);
    run(8, "truncation negligibility", truncation);
    run(9, "oracle equivalences", oracles);
    run(10, "end-to-end dating", dating);
    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
