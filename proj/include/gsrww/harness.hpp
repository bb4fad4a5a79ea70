#pragma once

#include "gsrww/grid.hpp"
#include "gsrww/innovations.hpp"
#include "gsrww/model.hpp"
#include "gsrww/suptest.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace gsrww {

enum class Scenario {
    /// theta* = (0.3, 1.0, 0.25), H = (0,1,0)'
    case_i,
    /// theta* = (0.3, 0.4, 0.6), H = (0,1,1)'
    case_ii,
};

GarchParams scenario_params(Scenario scenario);
Eigen::VectorXd scenario_direction(Scenario scenario);
std::string scenario_name(Scenario scenario);
Scenario parse_scenario(const std::string& name);

struct StudyConfig {
    Scenario scenario = Scenario::case_ii;
    std::vector<std::size_t> n_list{500};
    std::vector<double> delta_list{0.90, 0.95};
    std::vector<double> magnitude_list{0.05, 0.1, 0.2};
    std::vector<double> span_list{0.1, 0.2};
    double tau1_star = 0.5;
    std::size_t replications = 200;
    std::uint64_t seed = 20240601;
    SearchGrid grid{30, 0.1, 0.1, 0.5};
    std::size_t critical_replications = 2000;
    InnovationDist innovations = InnovationDist::normal();
    std::size_t burn_in = 1000;
    std::size_t threads = 1;

    void validate() const;
    static StudyConfig from_json(const nlohmann::json& j);
    [[nodiscard]] nlohmann::json to_json() const;
};

struct StudyCell {
    Scenario scenario = Scenario::case_ii;
    std::size_t n = 0;
    double delta = 0.0;
    double magnitude = 0.0;
    double span = 0.0;
    /// Replications that produced a statistic.
    std::size_t replications = 0;
    std::size_t aborted = 0;
    /// Acceptance rate for size studies, rejection rate for power studies.
    double rate = 0.0;
    double std_error = 0.0;
};

/// One simulated series pushed through scan and dating.
struct ReplicationOutcome {
    bool aborted = false;
    std::string error;
    double sup_statistic = 0.0;
    std::optional<std::pair<double, double>> argmax_window;
};

/// Replication `rep` of the study design at (n, magnitude, span). Seeds
/// depend on (seed, n, rep) only, so cells share innovations across shock sizes.
ReplicationOutcome run_replication(const StudyConfig& config, std::size_t n, double magnitude,
                                   double span, std::size_t rep);

/// Acceptance rates under no shock, one cell per (n, delta).
std::vector<StudyCell> size_study(const StudyConfig& config);
/// Rejection rates, one cell per (n, magnitude, span, delta).
std::vector<StudyCell> power_study(const StudyConfig& config);

/// Critical values the harness uses for series length n.
LimitDistribution study_limit(const StudyConfig& config, std::size_t n);

void write_study_csv(std::ostream& out, const std::vector<StudyCell>& cells);
void write_study_text(std::ostream& out, const std::vector<StudyCell>& cells);

}  // namespace gsrww
