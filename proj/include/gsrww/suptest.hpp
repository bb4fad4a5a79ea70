#pragma once

#include "gsrww/covariance.hpp"
#include "gsrww/grid.hpp"
#include "gsrww/params.hpp"
#include "gsrww/qmle.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gsrww {

/// Reference value c-bar for H'theta under the null.
struct NullReference {
    enum class Mode { fixed, complement };
    Mode mode = Mode::complement;
    double value = 0.0;

    static NullReference fixed(double c) { return {Mode::fixed, c}; }
    static NullReference complement() { return {Mode::complement, 0.0}; }
    [[nodiscard]] std::string mode_name() const {
        return mode == Mode::fixed ? "fixed" : "complement";
    }
};

struct ScanOptions {
    ParameterSpace space = ParameterSpace::garch(1, 1);
    FitOptions fit;
    NullReference null_ref = NullReference::complement();
    std::size_t threads = 1;
    /// Scan error once more than this fraction of windows fail.
    double max_failure_fraction = 0.2;
};

struct WindowStat {
    std::size_t j = 0;
    std::size_t k = 0;
    double tau1 = 0.0;
    double tau2 = 0.0;
    bool ok = false;
    std::string failure;
    double statistic = 0.0;
    GarchParams theta_hat;
    GarchParams theta_bar;
    double reference = 0.0;  // H'theta* used for this window
    double sigma_h = 0.0;
    Eigen::MatrixXd sigma_bar;
};

struct ScanResult {
    std::size_t n = 0;
    Eigen::VectorXd direction;
    SearchGrid grid;
    NullReference null_ref;
    std::vector<WindowStat> windows;
    std::size_t failures = 0;

    /// Index of the largest statistic among successful windows (first one on ties).
    [[nodiscard]] std::optional<std::size_t> argmax() const;
    [[nodiscard]] double sup_statistic() const;
};

/// Evaluates sqrt(n) (tau2-tau1)^chi (H' Sigma_bar H)^(-1/2) (H' theta_hat - c) on
/// every admissible grid window.
ScanResult scan(std::span<const double> x, const Eigen::VectorXd& direction,
                const SearchGrid& grid, const ScanOptions& opts = {});

/// Simulated law of sup over the grid of (1/sqrt n) sum eps / (tau2-tau1)^(1-chi).
class LimitDistribution {
public:
    LimitDistribution(std::size_t n, const SearchGrid& grid, std::size_t replications,
                      std::uint64_t seed, std::size_t threads = 1);

    /// The floor(N * delta)-th order statistic.
    [[nodiscard]] double quantile(double delta) const;
    [[nodiscard]] const std::vector<double>& sorted_sups() const noexcept { return sups_; }

private:
    std::vector<double> sups_;
};

/// One replication of the limit functional (exposed for testing).
double limit_sup(std::span<const double> eps, const SearchGrid& grid);

double critical_value(std::size_t n, const SearchGrid& grid, std::size_t replications,
                      double delta, std::uint64_t seed, std::size_t threads = 1);

struct ConfidenceInterval {
    double lower = 0.0;
    double upper = 0.0;
    friend bool operator==(const ConfidenceInterval&, const ConfidenceInterval&) = default;
};

struct TestReport {
    std::size_t n = 0;
    std::vector<WindowStat> per_window;
    std::size_t failures = 0;
    double sup_statistic = 0.0;
    double critical_value = 0.0;
    double delta = 0.95;
    bool reject = false;
    std::optional<std::pair<double, double>> dated_window;
    std::optional<GarchParams> theta_refit;
    /// Complement estimate for the dated window.
    std::optional<GarchParams> theta_out;
    std::optional<std::vector<ConfidenceInterval>> confidence_intervals;
    double ci_level = 0.95;
    NullReference null_ref;
    /// c-bar actually used at the reported window (fixed value or H'theta_bar).
    double null_reference = 0.0;
    std::string diagnostics;
};

struct DecideOptions {
    double delta = 0.95;
    double ci_level = 0.95;
};

/// Test decision, argmax dating, refit and confidence intervals.
TestReport decide_and_date(const ScanResult& scan_result, double q_hat, std::span<const double> x,
                           const ScanOptions& opts, const DecideOptions& decide = {});

}  // namespace gsrww
