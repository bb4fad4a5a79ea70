#include "gsrww/pipeline.hpp"

#include "gsrww/errors.hpp"
#include "gsrww/indexing.hpp"

#include <memory>

namespace gsrww {

TestReport run_test(std::span<const double> x, const TestConfig& config,
                    const LimitDistribution* limit) {
    std::unique_ptr<LimitDistribution> own;
    if (!limit) {
        own = std::make_unique<LimitDistribution>(x.size(), config.grid, config.replications,
                                                  config.seed, config.scan.threads);
        limit = own.get();
    }
    const double q = limit->quantile(config.delta);
    const ScanResult result = scan(x, config.direction, config.grid, config.scan);
    return decide_and_date(result, q, x, config.scan, {config.delta, config.ci_level});
}

std::vector<RollingEntry> run_rolling(std::span<const double> x, std::size_t window_size,
                                      std::size_t step, const TestConfig& config) {
    if (window_size == 0) throw ConfigError("rolling window size must be positive");
    if (step == 0) throw ConfigError("rolling step must be positive");
    if (x.size() < window_size)
        throw ConfigError("series of length " + std::to_string(x.size()) +
                          " is shorter than the rolling window " + std::to_string(window_size));

    const LimitDistribution limit(window_size, config.grid, config.replications, config.seed,
                                  config.scan.threads);
    std::vector<RollingEntry> entries;
    for (std::size_t start = 0; start + window_size <= x.size(); start += step) {
        RollingEntry entry;
        entry.index = entries.size();
        entry.start = start;
        entry.end = start + window_size;
        try {
            TestReport report = run_test(x.subspan(start, window_size), config, &limit);
            if (report.reject && report.dated_window) {
                const auto [t1, t2] = *report.dated_window;
                entry.break_period = std::make_pair(start + floor_index(window_size, t1),
                                                    start + floor_index(window_size, t2));
                if (report.theta_refit) entry.persistence_in = report.theta_refit->persistence();
                if (report.theta_out) entry.persistence_out = report.theta_out->persistence();
            }
            entry.report = std::move(report);
            entry.ok = true;
        } catch (const Error& e) {
            entry.error = e.what();
        }
        entries.push_back(std::move(entry));
    }
    return entries;
}

}  // namespace gsrww
