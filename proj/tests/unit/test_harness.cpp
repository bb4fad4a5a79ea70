#include "gsrww/errors.hpp"
#include "gsrww/harness.hpp"

#include <doctest.h>

#include <sstream>

using namespace gsrww;

TEST_CASE("scenario definitions") {
    CHECK(scenario_params(Scenario::case_i) == GarchParams::garch11(0.3, 1.0, 0.25));
    CHECK(scenario_params(Scenario::case_ii) == GarchParams::garch11(0.3, 0.4, 0.6));
    CHECK(scenario_direction(Scenario::case_i) == Eigen::Vector3d(0, 1, 0));
    CHECK(scenario_direction(Scenario::case_ii) == Eigen::Vector3d(0, 1, 1));
    CHECK(parse_scenario("case_i") == Scenario::case_i);
    CHECK(parse_scenario(scenario_name(Scenario::case_ii)) == Scenario::case_ii);
    CHECK_THROWS_AS(parse_scenario("case_iii"), ConfigError);
}

TEST_CASE("study config validation and JSON round trip") {
    StudyConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    CHECK(cfg.tau1_star == 0.5);
    const auto back = StudyConfig::from_json(cfg.to_json());
    CHECK(back.to_json() == cfg.to_json());
    cfg.replications = 10;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    CHECK_THROWS_AS(StudyConfig::from_json(nlohmann::json{{"scenario", 3}}), ConfigError);
}

TEST_CASE("small study is reproducible and reports standard errors") {
    StudyConfig cfg;
    cfg.scenario = Scenario::case_i;
    cfg.n_list = {300};
    cfg.replications = 50;
    cfg.magnitude_list = {0.2};
    cfg.span_list = {0.2};
    cfg.grid = SearchGrid{10, 0.1, 0.1, 0.5};
    cfg.critical_replications = 1000;
    const auto a = size_study(cfg);
    cfg.threads = 2;
    const auto b = size_study(cfg);
    REQUIRE(a.size() == 2);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].rate == b[i].rate);
        CHECK(a[i].replications + a[i].aborted == 50);
        CHECK(a[i].std_error == doctest::Approx(std::sqrt(a[i].rate * (1 - a[i].rate) /
                                                          static_cast<double>(a[i].replications))));
    }
    // Nested rejection regions: acceptance at 0.95 is at least acceptance at 0.90.
    CHECK(a[1].delta == 0.95);
    CHECK(a[1].rate >= a[0].rate);

    std::ostringstream csv, text;
    write_study_csv(csv, a);
    write_study_text(text, a);
    CHECK(csv.str().find("rate") != std::string::npos);
    CHECK(!text.str().empty());
}
