#include "gsrww/errors.hpp"
#include "gsrww/model.hpp"
#include "gsrww/random.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace gsrww;

TEST_CASE("parameter space and params validation") {
    const auto space = ParameterSpace::garch(1, 1);
    CHECK(space.dim() == 3);
    CHECK_NOTHROW(space.validate());
    CHECK(GarchParams::garch11(0.3, 0.4, 0.5).inside(space));
    CHECK_FALSE(GarchParams::garch11(1e-9, 0.4, 0.5).inside(space));
    CHECK_FALSE(GarchParams::garch11(0.3, -0.1, 0.5).inside(space));
    CHECK_FALSE(GarchParams::garch11(0.3, 0.4, 1.0).inside(space));
    CHECK_THROWS_AS(GarchParams::garch11(0.3, 0.4, 1.2).validate(space), DomainError);
    CHECK_THROWS_AS(ParameterSpace::garch(1, 1, 1e-6, 1.0).validate(), DomainError);
    CHECK_THROWS_AS(ParameterSpace::garch(0, 1).validate(), DomainError);

    const GarchParams p(0.2, {0.1, 0.05}, {0.3, 0.2});
    CHECK(p.dim() == 5);
    CHECK(GarchParams::from_vector(p.to_vector(), 2, 2) == p);
    CHECK(p.persistence() == doctest::Approx(0.65));
}

TEST_CASE("lyapunov exponent with alpha1 = 0 is log(beta1)") {
    const auto est = lyapunov_exponent(GarchParams::garch11(0.3, 0.0, 0.5),
                                       InnovationDist::normal(), 10'000, 3);
    CHECK(est.value == doctest::Approx(std::log(0.5)).epsilon(1e-12));
    CHECK(est.stationary());
    const auto prod = lyapunov_exponent_product(GarchParams::garch11(0.3, 0.0, 0.5),
                                                InnovationDist::student_t(7), 20'000, 3);
    CHECK(prod.value == doctest::Approx(std::log(0.5)).epsilon(1e-3));
}

TEST_CASE("lyapunov exponent below zero at unit persistence (Jensen)") {
    const auto est = lyapunov_exponent(GarchParams::garch11(0.3, 0.5, 0.5),
                                       InnovationDist::normal(), 100'000, 11);
    CHECK(est.value < 0.0);
    CHECK(est.stationary());
}

TEST_CASE("lyapunov exponent matches brute force mean of log(zeta^2 + 0.25)") {
    const auto est = lyapunov_exponent(GarchParams::garch11(0.3, 1.0, 0.25),
                                       InnovationDist::normal(), 100'000, 5);
    std::mt19937_64 eng(987654321);
    std::normal_distribution<double> z;
    double sum = 0.0, sum2 = 0.0;
    const int m = 1'000'000;
    for (int i = 0; i < m; ++i) {
        const double zz = z(eng);
        const double v = std::log(zz * zz + 0.25);
        sum += v;
        sum2 += v * v;
    }
    const double mean = sum / m;
    const double se_oracle = std::sqrt((sum2 / m - mean * mean) / m);
    const double se = std::hypot(est.std_error, se_oracle);
    CHECK(std::abs(est.value - mean) < 3.0 * se);
    CHECK(est.value < 0.0);
}

TEST_CASE("lyapunov product method agrees with the scalar form for GARCH(1,1)") {
    const auto p = GarchParams::garch11(0.3, 0.4, 0.5);
    const auto a = lyapunov_exponent(p, InnovationDist::normal(), 100'000, 1);
    const auto b = lyapunov_exponent_product(p, InnovationDist::normal(), 100'000, 2);
    CHECK(std::abs(a.value - b.value) < 3.0 * std::hypot(a.std_error, b.std_error) + 1e-3);
}

TEST_CASE("lyapunov exponent is seed invariant within Monte Carlo error") {
    const GarchParams p(0.1, {0.2, 0.1}, {0.3, 0.2});
    const auto a = lyapunov_exponent(p, InnovationDist::normal(), 50'000, 1);
    const auto b = lyapunov_exponent(p, InnovationDist::normal(), 50'000, 99);
    CHECK(std::abs(a.value - b.value) < 3.0 * std::hypot(a.std_error, b.std_error) + 1e-3);
    CHECK(a.stationary());
}

TEST_CASE("companion spectral radius") {
    CHECK(companion_spectral_radius(GarchParams::garch11(0.3, 0.4, 0.6)) == 0.6);
    CHECK(companion_spectral_radius(GarchParams(0.3, {0.1}, {0.0, 0.25})) ==
          doctest::Approx(0.5).epsilon(1e-12));
    const double root = (0.5 + std::sqrt(0.25 + 1.2)) / 2.0;
    CHECK(companion_spectral_radius(GarchParams(0.3, {0.1}, {0.5, 0.3})) ==
          doctest::Approx(root).epsilon(1e-12));
    CHECK_THROWS_AS(companion_spectral_radius(GarchParams(0.3, {0.1}, {})), DomainError);
}

TEST_CASE("companion matrix layout for GARCH(1,1)") {
    const auto a = companion_matrix(GarchParams::garch11(0.3, 0.4, 0.5), 2.0);
    REQUIRE(a.rows() == 2);
    // Rows: X^2 lag then sigma^2 lag; both driven by alpha1 * X^2 + beta1 * sigma^2.
    CHECK(a(0, 0) == doctest::Approx(0.4 * 4.0));
    CHECK(a(0, 1) == doctest::Approx(0.5 * 4.0));
    CHECK(a(1, 0) == doctest::Approx(0.4));
    CHECK(a(1, 1) == doctest::Approx(0.5));
}

TEST_CASE("simulate without shock equals plain GARCH bit for bit") {
    const auto base = GarchParams::garch11(0.3, 0.4, 0.6);
    ShockSpec spec = ShockSpec::none(base);
    spec.direction = Eigen::Vector3d(0, 1, 1);
    spec.magnitude = 0.0;
    spec.tau1_star = 0.5;
    spec.tau2_star = 0.7;
    const auto a = simulate(spec, 300, InnovationDist::normal(), 42);
    const auto b = simulate_garch(base, 300, InnovationDist::normal(), 42);
    CHECK(a.x == b.x);
    CHECK(a.sigma2 == b.sigma2);
}

TEST_CASE("simulate is a pure function of its inputs") {
    const auto base = GarchParams::garch11(0.3, 0.4, 0.5);
    const auto a = simulate_garch(base, 500, InnovationDist::student_t(7), 7, 200);
    const auto b = simulate_garch(base, 500, InnovationDist::student_t(7), 7, 200);
    const auto c = simulate_garch(base, 500, InnovationDist::student_t(7), 8, 200);
    CHECK(a.x == b.x);
    CHECK(a.x != c.x);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a.sigma2[i] > 0.0);
        CHECK(a.x[i] == doctest::Approx(a.zeta[i] * std::sqrt(a.sigma2[i])).epsilon(1e-14));
    }
}

TEST_CASE("degenerate innovations converge to the deterministic fixed point") {
    const auto s = simulate_garch(GarchParams::garch11(0.3, 0.4, 0.5), 100,
                                  InnovationDist::rademacher(), 1);
    for (double v : s.sigma2) CHECK(v == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("long-run mean of X^2 matches the unconditional variance") {
    const auto p = GarchParams::garch11(0.3, 0.4, 0.5);
    CHECK(unconditional_variance(p) == doctest::Approx(3.0));
    const auto s = simulate_garch(p, 100'000, InnovationDist::normal(), 2024);
    double mean = 0.0;
    for (double v : s.x) mean += v * v;
    mean /= static_cast<double>(s.size());
    // Batch means give a standard error that respects the serial dependence of X^2.
    const std::size_t batches = 100, len = s.size() / batches;
    double ss = 0.0;
    for (std::size_t b = 0; b < batches; ++b) {
        double m = 0.0;
        for (std::size_t i = b * len; i < (b + 1) * len; ++i) m += s.x[i] * s.x[i];
        m /= static_cast<double>(len);
        ss += (m - mean) * (m - mean);
    }
    const double se = std::sqrt(ss / (batches - 1) / batches);
    CHECK(std::abs(mean - 3.0) < 3.0 * se);
}

TEST_CASE("shock path switches parameters on the stated indices") {
    ShockSpec spec = ShockSpec::none(GarchParams::garch11(0.3, 0.4, 0.5));
    spec.direction = Eigen::Vector3d(0, 1, 0);
    spec.magnitude = 0.2;
    spec.tau1_star = 0.5;
    spec.tau2_star = 0.7;
    const auto shocked = spec.shocked();
    CHECK(shocked.alphas[0] == doctest::Approx(0.6));
    CHECK(&spec.at(50, 100, shocked) == &spec.base);
    CHECK(&spec.at(51, 100, shocked) == &shocked);
    CHECK(&spec.at(70, 100, shocked) == &shocked);
    CHECK(&spec.at(71, 100, shocked) == &spec.base);
}

TEST_CASE("shock validation") {
    const auto space = ParameterSpace::garch(1, 1);
    ShockSpec spec = ShockSpec::none(GarchParams::garch11(0.3, 0.4, 0.6));
    spec.direction = Eigen::Vector3d(0, 0, 1);
    spec.magnitude = 0.5;  // beta would reach 1.1
    spec.tau1_star = 0.5;
    spec.tau2_star = 0.7;
    CHECK_THROWS_AS(spec.validate(space), DomainError);
    spec.magnitude = 0.1;
    spec.tau2_star = 0.4;
    CHECK_THROWS_AS(spec.validate(space), DomainError);
}

TEST_CASE("explosive path raises an overflow error naming the index") {
    ShockSpec spec = ShockSpec::none(GarchParams::garch11(0.3, 0.4, 0.5));
    spec.direction = Eigen::Vector3d(0, 1, 0);
    spec.magnitude = 1e150;
    spec.tau1_star = 0.1;
    spec.tau2_star = 1.0;
    try {
        (void)simulate(spec, 2000, InnovationDist::normal(), 1, 0);
        FAIL("expected overflow");
    } catch (const OverflowError& e) {
        CHECK(e.index() > 200);
    } catch (const DomainError&) {
        // Rejected up front is also acceptable.
    }
}

TEST_CASE("innovation distributions") {
    CHECK(InnovationDist::normal().fourth_moment() == doctest::Approx(3.0));
    CHECK(InnovationDist::student_t(7).fourth_moment() == doctest::Approx(3.0 + 6.0 / 3.0));
    CHECK(InnovationDist::parse("t7").df.value() == 7.0);
    CHECK(InnovationDist::parse("normal").kind == InnovationKind::normal);
    CHECK_THROWS(InnovationDist::parse("cauchy"));
    Engine eng = make_engine(5);
    InnovationSampler t(InnovationDist::student_t(7));
    double s2 = 0.0;
    const int m = 200'000;
    for (int i = 0; i < m; ++i) {
        const double z = t(eng);
        s2 += z * z;
    }
    CHECK(s2 / m == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("derived seeds are distinct and deterministic") {
    CHECK(derive_seed(1, 0) == derive_seed(1, 0));
    CHECK(derive_seed(1, 0) != derive_seed(1, 1));
    CHECK(derive_seed(1, 0) != derive_seed(2, 0));
}
