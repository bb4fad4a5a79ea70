#include "gsrww/errors.hpp"
#include "gsrww/model.hpp"
#include "gsrww/optimizer.hpp"
#include "gsrww/qmle.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace gsrww;

namespace {

double l1(const GarchParams& a, const GarchParams& b) {
    return (a.to_vector() - b.to_vector()).cwiseAbs().sum();
}

}  // namespace

TEST_CASE("reparameterisation round trip and range") {
    const auto space = ParameterSpace::garch(2, 2);
    const Reparameterization map(space);
    std::mt19937_64 eng(1);
    std::normal_distribution<double> z(0.0, 3.0);
    for (int rep = 0; rep < 200; ++rep) {
        Eigen::VectorXd u(5);
        for (auto& v : u) v = z(eng);
        const auto p = map.to_params(u);
        CHECK(p.inside(space));
        CHECK(p.sum_beta() < space.beta_sum_max);
        CHECK((map.to_unconstrained(p) - u).cwiseAbs().maxCoeff() < 1e-12 * (1.0 + u.cwiseAbs().maxCoeff()));
    }
}

TEST_CASE("reparameterisation jacobian matches finite differences") {
    const Reparameterization map(ParameterSpace::garch(1, 2));
    Eigen::VectorXd u(4);
    u << -1.0, -0.5, 0.3, -0.2;
    const Eigen::MatrixXd j = map.jacobian(u);
    for (int k = 0; k < 4; ++k) {
        Eigen::VectorXd up = u, um = u;
        up[k] += 1e-6;
        um[k] -= 1e-6;
        const Eigen::VectorXd col =
            (map.to_params(up).to_vector() - map.to_params(um).to_vector()) / 2e-6;
        CHECK((col - j.col(k)).norm() < 1e-7);
    }
}

TEST_CASE("BFGS and Nelder-Mead minimise a quadratic") {
    const Objective f = [](const Eigen::VectorXd& u, Eigen::VectorXd& g) {
        g = Eigen::Vector2d(2.0 * (u[0] - 1.0), 20.0 * (u[1] + 2.0));
        return (u[0] - 1.0) * (u[0] - 1.0) + 10.0 * (u[1] + 2.0) * (u[1] + 2.0);
    };
    const auto b = minimize_bfgs(f, Eigen::Vector2d(5.0, 5.0));
    CHECK(b.converged);
    CHECK(b.u[0] == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(b.u[1] == doctest::Approx(-2.0).epsilon(1e-8));
    const auto nm = minimize_nelder_mead(f, Eigen::Vector2d(5.0, 5.0));
    CHECK(nm.u[0] == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(nm.u[1] == doctest::Approx(-2.0).epsilon(1e-4));
}

TEST_CASE("full-window QMLE is consistent at n = 4000") {
    const auto truth = GarchParams::garch11(0.3, 0.4, 0.5);
    const auto space = ParameterSpace::garch(1, 1);
    int close = 0;
    const int reps = 20;
    for (int rep = 0; rep < reps; ++rep) {
        const auto sim = simulate_garch(truth, 4000, InnovationDist::normal(), 500 + rep);
        const auto fit = fit_window(sim.x, Window::full(4000), space);
        CHECK(fit.theta_hat.inside(space));
        if (l1(fit.theta_hat, truth) < 0.15) ++close;
    }
    // 95% of runs in the long study; allow one miss in twenty here.
    CHECK(close >= reps - 1);
}

TEST_CASE("fit reaches a stationary point with a PSD hessian") {
    const auto truth = GarchParams::garch11(0.3, 0.4, 0.5);
    const auto sim = simulate_garch(truth, 2000, InnovationDist::normal(), 8);
    const auto fit = fit_window(sim.x, Window::full(2000), ParameterSpace::garch(1, 1));
    CHECK(fit.converged);
    CHECK(fit.grad_norm < 1e-8);
    const auto ev = neg_loglik_grad_hess(sim.x, Window::full(2000), fit.theta_hat);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ev.hessian);
    CHECK(es.eigenvalues().minCoeff() >= -1e-8);
    CHECK(fit.neg_loglik == doctest::Approx(ev.value).epsilon(1e-14));
    CHECK(fit.neg_loglik <= neg_loglik(sim.x, Window::full(2000), truth));
}

TEST_CASE("fit is deterministic") {
    const auto sim = simulate_garch(GarchParams::garch11(0.3, 0.4, 0.5), 600,
                                    InnovationDist::normal(), 12);
    const auto space = ParameterSpace::garch(1, 1);
    const auto a = fit_window(sim.x, Window(0.2, 0.8, 600), space);
    const auto b = fit_window(sim.x, Window(0.2, 0.8, 600), space);
    CHECK(a.theta_hat == b.theta_hat);
    CHECK(a.neg_loglik == b.neg_loglik);
}

TEST_CASE("empty-window complement fit equals the full-window fit") {
    const auto sim = simulate_garch(GarchParams::garch11(0.3, 0.4, 0.5), 800,
                                    InnovationDist::normal(), 13);
    const auto space = ParameterSpace::garch(1, 1);
    const auto a = fit_complement(sim.x, Window::empty(800), space);
    const auto b = fit_window(sim.x, Window::full(800), space);
    CHECK(a.theta_hat == b.theta_hat);
    CHECK(a.neg_loglik == b.neg_loglik);
}

TEST_CASE("complement fit agrees with the full fit under the null") {
    const auto sim = simulate_garch(GarchParams::garch11(0.3, 0.4, 0.5), 4000,
                                    InnovationDist::normal(), 14);
    const auto space = ParameterSpace::garch(1, 1);
    const auto full = fit_window(sim.x, Window::full(4000), space);
    const auto comp = fit_complement(sim.x, Window(0.5, 0.6, 4000), space);
    CHECK(l1(full.theta_hat, comp.theta_hat) < 0.05);
}

TEST_CASE("complement fit excludes a contaminated window") {
    const auto base = GarchParams::garch11(0.3, 0.4, 0.5);
    ShockSpec spec = ShockSpec::none(base);
    spec.direction = Eigen::Vector3d(0, 1, 0);
    spec.magnitude = 0.8;
    spec.tau1_star = 0.5;
    spec.tau2_star = 0.6;
    const auto sim = simulate(spec, 4000, InnovationDist::normal(), 15);
    const auto space = ParameterSpace::garch(1, 1);
    const auto comp = fit_complement(sim.x, Window(0.5, 0.6, 4000), space);
    CHECK(l1(comp.theta_hat, base) < 0.15);
    const auto contaminated = fit_window(sim.x, Window::full(4000), space);
    CHECK(l1(contaminated.theta_hat, base) > l1(comp.theta_hat, base));
}

TEST_CASE("scale equivariance of the fit") {
    const auto sim = simulate_garch(GarchParams::garch11(0.3, 0.4, 0.5), 2000,
                                    InnovationDist::normal(), 16);
    const double c = 3.0;
    std::vector<double> scaled(sim.x);
    for (auto& v : scaled) v *= c;
    auto space = ParameterSpace::garch(1, 1);
    const auto a = fit_window(sim.x, Window::full(2000), space);
    space.alpha_min *= c * c;
    space.upper[0] *= c * c;
    const auto b = fit_window(scaled, Window::full(2000), space);
    CHECK(b.theta_hat.alpha0 == doctest::Approx(c * c * a.theta_hat.alpha0).epsilon(1e-5));
    CHECK(b.theta_hat.alphas[0] == doctest::Approx(a.theta_hat.alphas[0]).epsilon(1e-5));
    CHECK(b.theta_hat.betas[0] == doctest::Approx(a.theta_hat.betas[0]).epsilon(1e-5));
}

TEST_CASE("fixed intercept option holds alpha0") {
    const auto sim = simulate_garch(GarchParams::garch11(0.3, 0.4, 0.5), 1000,
                                    InnovationDist::normal(), 17);
    FitOptions opts;
    opts.fixed_alpha0 = 0.3;
    const auto fit = fit_window(sim.x, Window::full(1000), ParameterSpace::garch(1, 1), opts);
    CHECK(fit.theta_hat.alpha0 == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("GARCH(2,1) fit stays inside the space") {
    const GarchParams truth(0.2, {0.15, 0.1}, {0.5});
    const auto sim = simulate_garch(truth, 3000, InnovationDist::normal(), 18);
    const auto space = ParameterSpace::garch(2, 1);
    const auto fit = fit_window(sim.x, Window::full(3000), space);
    CHECK(fit.theta_hat.inside(space));
    CHECK(l1(fit.theta_hat, truth) < 0.4);
}

TEST_CASE("fit error paths") {
    const auto space = ParameterSpace::garch(1, 1);
    const auto degenerate = simulate_garch(GarchParams::garch11(0.3, 0.4, 0.5), 500,
                                           InnovationDist::rademacher(), 1);
    bool surfaced = false;
    try {
        surfaced = fit_window(degenerate.x, Window::full(500), space).at_boundary;
    } catch (const FitError&) {
        surfaced = true;
    }
    CHECK(surfaced);

    const auto sim = simulate_garch(GarchParams::garch11(0.3, 0.4, 0.5), 100,
                                    InnovationDist::normal(), 2);
    CHECK_THROWS_AS(fit_window(sim.x, Window(0.0, 0.2, 100), space), DomainError);

    std::vector<double> bad(sim.x);
    bad[10] = std::nan("");
    CHECK_THROWS_AS(fit_window(bad, Window::full(100), space), FitError);
}

TEST_CASE("default starts include the moment-matched start") {
    const auto starts = default_starts();
    CHECK(starts.size() == 4);
    CHECK(starts.front().first == doctest::Approx(0.1));
    CHECK(starts.front().second == doctest::Approx(0.8));
}
