// gsrww: scan a return series for a changed-parameter GARCH period.

#include "gsrww/errors.hpp"
#include "gsrww/harness.hpp"
#include "gsrww/ingest.hpp"
#include "gsrww/model.hpp"
#include "gsrww/pipeline.hpp"
#include "gsrww/report.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace gsrww;

constexpr int kExitConfig = 1;
constexpr int kExitIngest = 2;
constexpr int kExitFit = 3;
constexpr int kExitInference = 4;

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size() && item.find_first_not_of(' ', used) != std::string::npos)
                throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ConfigError("cannot parse list entry '" + item + "'");
        }
    }
    if (out.empty()) throw ConfigError("empty list '" + text + "'");
    return out;
}

// Writes to `path`, or stdout when the path is empty or "-".
template <class Fn>
void emit(const std::string& path, Fn&& fn) {
    if (path.empty() || path == "-") {
        fn(std::cout);
        return;
    }
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open '" + path + "' for writing");
    fn(out);
}

struct ScanFlags {
    std::string input;
    std::string column = "0";
    std::string date_column;
    bool log_returns = false;
    std::size_t ar_order = 0;
    std::size_t grid = 30;
    double kappa = 0.1;
    double kappa_prime = 0.1;
    double chi = 0.5;
    double delta = 0.95;
    double ci_level = 0.95;
    std::size_t reps = 10'000;
    std::uint64_t seed = 1;
    std::string h_direction = "0,1,1";
    std::optional<double> c_bar;
    std::size_t rolling = 0;
    std::size_t step = 0;
    std::size_t threads = 1;
    std::string out;
    std::string windows_out;
};

TestConfig make_config(const ScanFlags& f) {
    TestConfig cfg;
    cfg.grid = SearchGrid{f.grid, f.kappa, f.kappa_prime, f.chi};
    cfg.grid.validate();
    const auto h = parse_list(f.h_direction);
    cfg.direction = Eigen::Map<const Eigen::VectorXd>(h.data(), static_cast<Eigen::Index>(h.size()));
    if (h.size() < 3) throw ConfigError("--h-direction needs at least 3 entries");
    const std::size_t r = 1;
    const std::size_t s = h.size() - 2;
    cfg.scan.space = ParameterSpace::garch(r, s);
    cfg.scan.threads = f.threads;
    if (f.c_bar) cfg.scan.null_ref = NullReference::fixed(*f.c_bar);
    if (!(f.delta > 0.0 && f.delta < 1.0)) throw ConfigError("--delta must lie in (0,1)");
    if (!(f.ci_level > 0.0 && f.ci_level < 1.0)) throw ConfigError("--ci-level must lie in (0,1)");
    cfg.delta = f.delta;
    cfg.ci_level = f.ci_level;
    cfg.replications = f.reps;
    cfg.seed = f.seed;
    return cfg;
}

nlohmann::json rolling_json(const std::vector<RollingEntry>& entries) {
    auto arr = nlohmann::json::array();
    for (const auto& e : entries) {
        nlohmann::json j;
        j["index"] = e.index;
        j["start"] = e.start;
        j["end"] = e.end;
        j["ok"] = e.ok;
        if (!e.ok) j["error"] = e.error;
        if (e.report) j["report"] = report_to_json(*e.report);
        if (e.break_period) {
            j["break_start"] = e.break_period->first;
            j["break_end"] = e.break_period->second;
        }
        if (e.persistence_in) j["persistence_in"] = *e.persistence_in;
        if (e.persistence_out) j["persistence_out"] = *e.persistence_out;
        arr.push_back(std::move(j));
    }
    return arr;
}

int run_scan_command(const ScanFlags& f) {
    const TestConfig cfg = make_config(f);
    IngestSpec spec;
    spec.path = f.input;
    spec.column = f.column;
    if (!f.date_column.empty()) spec.date_column = f.date_column;
    spec.transform = f.log_returns ? Transform::log_return : Transform::none;
    spec.prewhiten_ar_order = f.ar_order;
    const IngestResult data = ingest(spec);
    if (data.skipped_rows > 0)
        std::cerr << "warning: skipped " << data.skipped_rows << " rows with missing values\n";

    if (f.rolling > 0) {
        const std::size_t step = f.step == 0 ? f.rolling : f.step;
        const auto entries = run_rolling(data.series, f.rolling, step, cfg);
        emit(f.out, [&](std::ostream& os) { os << rolling_json(entries).dump(2) << '\n'; });
        std::cerr << "start,end,break_start,break_end,persistence_in,persistence_out\n";
        for (const auto& e : entries) {
            if (!e.break_period) continue;
            std::cerr << e.start << ',' << e.end << ',' << e.break_period->first << ','
                      << e.break_period->second << ',' << e.persistence_in.value_or(NAN) << ','
                      << e.persistence_out.value_or(NAN) << '\n';
        }
        return 0;
    }

    const TestReport report = run_test(data.series, cfg);
    emit(f.out, [&](std::ostream& os) { os << serialize_report(report) << '\n'; });
    if (!f.windows_out.empty())
        emit(f.windows_out, [&](std::ostream& os) { write_window_csv(os, report); });
    return 0;
}

struct SimulateFlags {
    std::string scenario = "case_ii";
    std::size_t n = 500;
    double magnitude = 0.0;
    double tau1 = 0.5;
    double tau2 = 0.7;
    std::string innovations = "normal";
    std::uint64_t seed = 1;
    std::size_t burn_in = 1000;
    std::string out;
};

int run_simulate_command(const SimulateFlags& f) {
    const Scenario sc = parse_scenario(f.scenario);
    ShockSpec spec = ShockSpec::none(scenario_params(sc));
    spec.direction = scenario_direction(sc);
    spec.magnitude = f.magnitude;
    spec.tau1_star = f.tau1;
    spec.tau2_star = f.tau2;
    spec.validate(ParameterSpace::garch(1, 1));
    const auto sample = simulate(spec, f.n, InnovationDist::parse(f.innovations), f.seed, f.burn_in);
    emit(f.out, [&](std::ostream& os) {
        os << "x\n";
        char buf[64];
        for (double v : sample.x) {
            std::snprintf(buf, sizeof buf, "%.17g\n", v);
            os << buf;
        }
    });
    return 0;
}

struct StudyFlags {
    std::string config;
    std::string kind = "size";
    std::string out;
    std::string format = "text";
    std::size_t threads = 0;
};

int run_study_command(const StudyFlags& f) {
    StudyConfig cfg;
    if (!f.config.empty()) {
        std::ifstream in(f.config);
        if (!in) throw ConfigError("cannot open config '" + f.config + "'");
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(std::string("invalid config JSON: ") + e.what());
        }
        cfg = StudyConfig::from_json(j);
    }
    if (f.threads > 0) cfg.threads = f.threads;
    cfg.validate();
    std::vector<StudyCell> cells;
    if (f.kind == "size")
        cells = size_study(cfg);
    else if (f.kind == "power")
        cells = power_study(cfg);
    else
        throw ConfigError("--kind must be size or power");
    emit(f.out, [&](std::ostream& os) {
        if (f.format == "csv")
            write_study_csv(os, cells);
        else
            write_study_text(os, cells);
    });
    return 0;
}

struct CriticalFlags {
    std::size_t n = 1000;
    std::size_t grid = 30;
    double kappa = 0.1;
    double kappa_prime = 0.1;
    double chi = 0.5;
    std::size_t reps = 10'000;
    std::uint64_t seed = 1;
    std::string deltas = "0.9,0.95";
    std::size_t threads = 1;
};

int run_critical_command(const CriticalFlags& f) {
    const SearchGrid grid{f.grid, f.kappa, f.kappa_prime, f.chi};
    grid.validate();
    const LimitDistribution limit(f.n, grid, f.reps, f.seed, f.threads);
    nlohmann::json j;
    j["n"] = f.n;
    j["replications"] = f.reps;
    for (double d : parse_list(f.deltas)) j["quantiles"][std::to_string(d)] = limit.quantile(d);
    std::cout << j.dump(2) << '\n';
    return 0;
}

void add_grid_flags(CLI::App* cmd, std::size_t& L, double& kappa, double& kappa_prime,
                    double& chi) {
    cmd->add_option("--grid", L, "Grid resolution L")->capture_default_str();
    cmd->add_option("--kappa", kappa, "Minimum window width")->capture_default_str();
    cmd->add_option("--kappa-prime", kappa_prime, "Minimum complement width")
        ->capture_default_str();
    cmd->add_option("--chi", chi, "Width exponent")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Double-supremum test for a changed-parameter period in GARCH data"};
    app.require_subcommand(1);

    ScanFlags scan_flags;
    auto* scan_cmd = app.add_subcommand("scan", "Run the test on a CSV series");
    scan_cmd->add_option("--input", scan_flags.input, "CSV file")->required();
    scan_cmd->add_option("--column", scan_flags.column, "Column name or 0-based index")
        ->capture_default_str();
    scan_cmd->add_option("--date-column", scan_flags.date_column, "Optional date column");
    scan_cmd->add_flag("--log-returns", scan_flags.log_returns, "Treat the column as prices");
    scan_cmd->add_option("--ar-order", scan_flags.ar_order, "AR prewhitening order (0 = off)")
        ->capture_default_str();
    add_grid_flags(scan_cmd, scan_flags.grid, scan_flags.kappa, scan_flags.kappa_prime,
                   scan_flags.chi);
    scan_cmd->add_option("--delta", scan_flags.delta, "Test level")->capture_default_str();
    scan_cmd->add_option("--ci-level", scan_flags.ci_level, "Confidence level")
        ->capture_default_str();
    scan_cmd->add_option("--reps", scan_flags.reps, "Critical-value replications")
        ->capture_default_str();
    scan_cmd->add_option("--seed", scan_flags.seed, "Random seed")->capture_default_str();
    scan_cmd->add_option("--h-direction", scan_flags.h_direction, "Comma list H")
        ->capture_default_str();
    scan_cmd->add_option("--c-bar", scan_flags.c_bar, "Fixed null reference for H'theta");
    scan_cmd->add_option("--rolling", scan_flags.rolling, "Rolling window size (0 = off)");
    scan_cmd->add_option("--step", scan_flags.step, "Rolling step (default: window size)");
    scan_cmd->add_option("--threads", scan_flags.threads, "Worker threads (0 = all cores)")
        ->capture_default_str();
    scan_cmd->add_option("--out", scan_flags.out, "Report path (default stdout)");
    scan_cmd->add_option("--windows-out", scan_flags.windows_out, "Per-window CSV path");

    SimulateFlags sim_flags;
    auto* sim_cmd = app.add_subcommand("simulate", "Simulate a (shocked) GARCH(1,1) series");
    sim_cmd->add_option("--scenario", sim_flags.scenario, "case_i or case_ii")
        ->capture_default_str();
    sim_cmd->add_option("--n", sim_flags.n, "Series length")->capture_default_str();
    sim_cmd->add_option("--magnitude", sim_flags.magnitude, "Shock size along H")
        ->capture_default_str();
    sim_cmd->add_option("--tau1", sim_flags.tau1, "Shock start fraction")->capture_default_str();
    sim_cmd->add_option("--tau2", sim_flags.tau2, "Shock end fraction")->capture_default_str();
    sim_cmd->add_option("--innovations", sim_flags.innovations, "normal, tN or rademacher")
        ->capture_default_str();
    sim_cmd->add_option("--seed", sim_flags.seed, "Random seed")->capture_default_str();
    sim_cmd->add_option("--burn-in", sim_flags.burn_in, "Discarded steps")->capture_default_str();
    sim_cmd->add_option("--out", sim_flags.out, "CSV path (default stdout)");

    StudyFlags study_flags;
    auto* study_cmd = app.add_subcommand("study", "Monte Carlo size or power table");
    study_cmd->add_option("--config", study_flags.config, "JSON study config");
    study_cmd->add_option("--kind", study_flags.kind, "size or power")->capture_default_str();
    study_cmd->add_option("--format", study_flags.format, "text or csv")->capture_default_str();
    study_cmd->add_option("--threads", study_flags.threads, "Override config threads");
    study_cmd->add_option("--out", study_flags.out, "Table path (default stdout)");

    CriticalFlags crit_flags;
    auto* crit_cmd = app.add_subcommand("critical", "Simulated critical values");
    crit_cmd->add_option("--n", crit_flags.n, "Series length")->capture_default_str();
    add_grid_flags(crit_cmd, crit_flags.grid, crit_flags.kappa, crit_flags.kappa_prime,
                   crit_flags.chi);
    crit_cmd->add_option("--reps", crit_flags.reps, "Replications")->capture_default_str();
    crit_cmd->add_option("--seed", crit_flags.seed, "Random seed")->capture_default_str();
    crit_cmd->add_option("--delta", crit_flags.deltas, "Comma list of levels")
        ->capture_default_str();
    crit_cmd->add_option("--threads", crit_flags.threads, "Worker threads")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*scan_cmd) return run_scan_command(scan_flags);
        if (*sim_cmd) return run_simulate_command(sim_flags);
        if (*study_cmd) return run_study_command(study_flags);
        if (*crit_cmd) return run_critical_command(crit_flags);
    } catch (const IngestError& e) {
        std::cerr << "ingest error: " << e.what() << '\n';
        return kExitIngest;
    } catch (const FitError& e) {
        std::cerr << "fit error: " << e.what() << '\n';
        return kExitFit;
    } catch (const InferenceError& e) {
        std::cerr << "inference error: " << e.what() << '\n';
        return kExitInference;
    } catch (const ScanError& e) {
        std::cerr << "inference error: " << e.what() << '\n';
        return kExitInference;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    return kExitConfig;
}
