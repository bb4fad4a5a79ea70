#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gsrww {

enum class Transform { none, log_return };

struct IngestSpec {
    std::string path;
    /// Header name, or a 0-based column index written as digits.
    std::string column = "0";
    std::optional<std::string> date_column;
    Transform transform = Transform::none;
    std::size_t prewhiten_ar_order = 0;
    std::size_t min_rows = 50;
};

struct ArFit {
    /// Intercept followed by the lag coefficients phi_1..phi_p.
    Eigen::VectorXd coefficients;
    Eigen::VectorXd std_errors;
    std::vector<double> residuals;
};

struct IngestResult {
    std::vector<double> series;
    std::vector<std::string> dates;
    /// 1-based file line of each raw value.
    std::vector<std::size_t> lines;
    std::size_t skipped_rows = 0;
    std::optional<ArFit> ar;
};

/// Reads one numeric column of a comma- or semicolon-delimited file.
/// Empty or NA fields are skipped and counted; anything else unparseable is
/// an IngestError naming the 1-based line.
IngestResult read_csv_column(const std::string& path, const std::string& column,
                             const std::optional<std::string>& date_column = std::nullopt);

/// r_i = log(p_i / p_{i-1}); `first_row` only labels error messages.
std::vector<double> log_returns(std::span<const double> prices, std::size_t first_row = 1);

/// Least-squares AR(p) with intercept; residuals have length size - p.
ArFit fit_ar(std::span<const double> series, std::size_t order);

/// Full ingestion: read, transform, prewhiten, check the row minimum.
IngestResult ingest(const IngestSpec& spec);

}  // namespace gsrww
