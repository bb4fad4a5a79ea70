#pragma once

#include "gsrww/suptest.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gsrww {

/// Everything needed to run the full test on one series.
struct TestConfig {
    SearchGrid grid;
    Eigen::VectorXd direction = Eigen::Vector3d(0.0, 1.0, 1.0);
    ScanOptions scan;
    double delta = 0.95;
    double ci_level = 0.95;
    std::size_t replications = 10'000;
    std::uint64_t seed = 1;
};

/// Critical value, scan, decision and dating. `limit` may carry a
/// precomputed limit distribution for this series length.
TestReport run_test(std::span<const double> x, const TestConfig& config,
                    const LimitDistribution* limit = nullptr);

struct RollingEntry {
    std::size_t index = 0;
    /// 0-based [start, end) of the block within the full series.
    std::size_t start = 0;
    std::size_t end = 0;
    bool ok = false;
    std::string error;
    std::optional<TestReport> report;
    /// Dated break as 0-based [start, end) indices of the full series.
    std::optional<std::pair<std::size_t, std::size_t>> break_period;
    std::optional<double> persistence_in;
    std::optional<double> persistence_out;
};

/// Runs the test on consecutive blocks of `window_size` observations,
/// advancing by `step`. Failed blocks are recorded and the run continues.
std::vector<RollingEntry> run_rolling(std::span<const double> x, std::size_t window_size,
                                      std::size_t step, const TestConfig& config);

}  // namespace gsrww
