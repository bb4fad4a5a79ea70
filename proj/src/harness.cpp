#include "gsrww/harness.hpp"

#include "gsrww/errors.hpp"
#include "gsrww/parallel.hpp"
#include "gsrww/random.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>

namespace gsrww {

GarchParams scenario_params(Scenario scenario) {
    return scenario == Scenario::case_i ? GarchParams::garch11(0.3, 1.0, 0.25)
                                        : GarchParams::garch11(0.3, 0.4, 0.6);
}

Eigen::VectorXd scenario_direction(Scenario scenario) {
    return scenario == Scenario::case_i ? Eigen::Vector3d(0.0, 1.0, 0.0)
                                        : Eigen::Vector3d(0.0, 1.0, 1.0);
}

std::string scenario_name(Scenario scenario) {
    return scenario == Scenario::case_i ? "case_i" : "case_ii";
}

Scenario parse_scenario(const std::string& name) {
    if (name == "case_i" || name == "i") return Scenario::case_i;
    if (name == "case_ii" || name == "ii") return Scenario::case_ii;
    throw ConfigError("unknown scenario '" + name + "' (case_i, case_ii)");
}

void StudyConfig::validate() const {
    grid.validate();
    if (n_list.empty() || delta_list.empty()) throw ConfigError("study needs n and delta values");
    if (replications < 50) throw ConfigError("studies need at least 50 replications");
    for (double d : delta_list)
        if (!(d > 0.0 && d < 1.0)) throw ConfigError("delta must lie in (0,1)");
    for (double m : magnitude_list)
        if (!(m >= 0.0)) throw ConfigError("shock magnitudes must be non-negative");
    for (double s : span_list)
        if (!(s > 0.0 && tau1_star + s <= 1.0)) throw ConfigError("shock span must fit in (tau1*, 1]");
    innovations.validate();
}

StudyConfig StudyConfig::from_json(const nlohmann::json& j) {
    StudyConfig c;
    try {
        if (j.contains("scenario")) c.scenario = parse_scenario(j["scenario"].get<std::string>());
        if (j.contains("n_list")) c.n_list = j["n_list"].get<std::vector<std::size_t>>();
        if (j.contains("delta_list")) c.delta_list = j["delta_list"].get<std::vector<double>>();
        if (j.contains("magnitude_list")) c.magnitude_list = j["magnitude_list"].get<std::vector<double>>();
        if (j.contains("span_list")) c.span_list = j["span_list"].get<std::vector<double>>();
        c.tau1_star = j.value("tau1_star", c.tau1_star);
        c.replications = j.value("replications", c.replications);
        c.seed = j.value("seed", c.seed);
        c.grid.L = j.value("grid", c.grid.L);
        c.grid.kappa = j.value("kappa", c.grid.kappa);
        c.grid.kappa_prime = j.value("kappa_prime", c.grid.kappa_prime);
        c.grid.chi = j.value("chi", c.grid.chi);
        c.critical_replications = j.value("reps", c.critical_replications);
        if (j.contains("innovations")) c.innovations = InnovationDist::parse(j["innovations"].get<std::string>());
        c.burn_in = j.value("burn_in", c.burn_in);
        c.threads = j.value("threads", c.threads);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("invalid study configuration: ") + e.what());
    }
    c.validate();
    return c;
}

nlohmann::json StudyConfig::to_json() const {
    return {{"scenario", scenario_name(scenario)},
            {"n_list", n_list},
            {"delta_list", delta_list},
            {"magnitude_list", magnitude_list},
            {"span_list", span_list},
            {"tau1_star", tau1_star},
            {"replications", replications},
            {"seed", seed},
            {"grid", grid.L},
            {"kappa", grid.kappa},
            {"kappa_prime", grid.kappa_prime},
            {"chi", grid.chi},
            {"reps", critical_replications},
            {"innovations", innovations.name()},
            {"burn_in", burn_in},
            {"threads", threads}};
}

ReplicationOutcome run_replication(const StudyConfig& config, std::size_t n, double magnitude,
                                   double span, std::size_t rep) {
    ShockSpec spec = ShockSpec::none(scenario_params(config.scenario));
    spec.direction = scenario_direction(config.scenario);
    spec.magnitude = magnitude;
    spec.tau1_star = config.tau1_star;
    spec.tau2_star = config.tau1_star + span;

    const std::uint64_t seed = derive_seed(derive_seed(config.seed, n), rep);
    ReplicationOutcome out;
    try {
        const SeriesSample sample = simulate(spec, n, config.innovations, seed, config.burn_in);
        ScanOptions opts;
        opts.space = ParameterSpace::garch(1, 1);
        opts.threads = 1;
        opts.null_ref = NullReference::fixed(spec.direction.dot(spec.base.to_vector()));
        const ScanResult result = scan(sample.x, spec.direction, config.grid, opts);
        const auto best = result.argmax();
        out.sup_statistic = result.sup_statistic();
        if (best) out.argmax_window = std::make_pair(result.windows[*best].tau1, result.windows[*best].tau2);
    } catch (const Error& e) {
        out.aborted = true;
        out.error = e.what();
    }
    return out;
}

LimitDistribution study_limit(const StudyConfig& config, std::size_t n) {
    return {n, config.grid, config.critical_replications, derive_seed(config.seed ^ 0x5eedULL, n),
            config.threads};
}

namespace {

std::vector<ReplicationOutcome> run_cell(const StudyConfig& config, std::size_t n, double magnitude,
                                         double span) {
    std::vector<ReplicationOutcome> outcomes(config.replications);
    parallel_for(config.replications, config.threads, [&](std::size_t rep) {
        outcomes[rep] = run_replication(config, n, magnitude, span, rep);
    });
    return outcomes;
}

StudyCell tabulate(const StudyConfig& config, const std::vector<ReplicationOutcome>& outcomes,
                   std::size_t n, double delta, double q, double magnitude, double span,
                   bool count_rejections) {
    StudyCell cell;
    cell.scenario = config.scenario;
    cell.n = n;
    cell.delta = delta;
    cell.magnitude = magnitude;
    cell.span = span;
    std::size_t hits = 0;
    for (const auto& o : outcomes) {
        if (o.aborted) {
            ++cell.aborted;
            continue;
        }
        ++cell.replications;
        const bool reject = o.sup_statistic > q;
        if (reject == count_rejections) ++hits;
    }
    if (cell.replications > 0) {
        const double m = static_cast<double>(cell.replications);
        cell.rate = static_cast<double>(hits) / m;
        cell.std_error = std::sqrt(cell.rate * (1.0 - cell.rate) / m);
    }
    return cell;
}

}  // namespace

std::vector<StudyCell> size_study(const StudyConfig& config) {
    config.validate();
    std::vector<StudyCell> cells;
    for (std::size_t n : config.n_list) {
        const LimitDistribution limit = study_limit(config, n);
        const auto outcomes = run_cell(config, n, 0.0, 0.0);
        for (double delta : config.delta_list)
            cells.push_back(tabulate(config, outcomes, n, delta, limit.quantile(delta), 0.0, 0.0, false));
    }
    return cells;
}

std::vector<StudyCell> power_study(const StudyConfig& config) {
    config.validate();
    std::vector<StudyCell> cells;
    for (std::size_t n : config.n_list) {
        const LimitDistribution limit = study_limit(config, n);
        for (double magnitude : config.magnitude_list) {
            for (double span : config.span_list) {
                const auto outcomes = run_cell(config, n, magnitude, span);
                for (double delta : config.delta_list)
                    cells.push_back(
                        tabulate(config, outcomes, n, delta, limit.quantile(delta), magnitude, span, true));
            }
        }
    }
    return cells;
}

void write_study_csv(std::ostream& out, const std::vector<StudyCell>& cells) {
    out << "scenario,n,delta,magnitude,span,replications,aborted,rate,std_error\n";
    for (const auto& c : cells)
        out << scenario_name(c.scenario) << ',' << c.n << ',' << c.delta << ',' << c.magnitude << ','
            << c.span << ',' << c.replications << ',' << c.aborted << ',' << c.rate << ','
            << c.std_error << '\n';
}

void write_study_text(std::ostream& out, const std::vector<StudyCell>& cells) {
    out << std::left << std::setw(9) << "scenario" << std::right << std::setw(7) << "n"
        << std::setw(7) << "delta" << std::setw(7) << "shock" << std::setw(6) << "span"
        << std::setw(6) << "reps" << std::setw(6) << "abrt" << std::setw(8) << "rate"
        << std::setw(8) << "se" << '\n';
    out << std::fixed;
    for (const auto& c : cells)
        out << std::left << std::setw(9) << scenario_name(c.scenario) << std::right << std::setw(7)
            << c.n << std::setw(7) << std::setprecision(2) << c.delta << std::setw(7)
            << std::setprecision(3) << c.magnitude << std::setw(6) << std::setprecision(2) << c.span
            << std::setw(6) << c.replications << std::setw(6) << c.aborted << std::setw(8)
            << std::setprecision(3) << c.rate << std::setw(8) << std::setprecision(3) << c.std_error
            << '\n';
    out.unsetf(std::ios::fixed);
}

}  // namespace gsrww
