#include "gsrww/ingest.hpp"

#include "gsrww/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace gsrww {

namespace {

std::string trim(std::string_view s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    std::string out(s.substr(a, b - a));
    if (out.size() >= 2 && out.front() == '"' && out.back() == '"') out = out.substr(1, out.size() - 2);
    return out;
}

std::vector<std::string> split(const std::string& line, char delim) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (char c : line) {
        if (c == '"') quoted = !quoted;
        if (c == delim && !quoted) {
            fields.push_back(trim(field));
            field.clear();
        } else {
            field.push_back(c);
        }
    }
    fields.push_back(trim(field));
    return fields;
}

std::optional<double> parse_number(const std::string& text) {
    if (text.empty()) return std::nullopt;
    double v = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (*first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || !std::isfinite(v)) return std::nullopt;
    return v;
}

bool is_missing(const std::string& text) {
    std::string lower;
    for (char c : text) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    return lower.empty() || lower == "na" || lower == "nan" || lower == "null" || lower == ".";
}

bool is_index(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

std::size_t locate(const std::vector<std::string>& header, const std::string& name, bool has_header) {
    if (has_header) {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it != header.end()) return static_cast<std::size_t>(it - header.begin());
    }
    if (is_index(name)) return static_cast<std::size_t>(std::stoul(name));
    throw IngestError("column '" + name + "' not found" + (has_header ? "" : " (file has no header row)"));
}

}  // namespace

IngestResult read_csv_column(const std::string& path, const std::string& column,
                             const std::optional<std::string>& date_column) {
    std::ifstream in(path);
    if (!in) throw IngestError("cannot open '" + path + "'");

    std::vector<std::pair<std::size_t, std::string>> lines;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (lineno == 1 && line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
        if (trim(line).empty()) continue;
        lines.emplace_back(lineno, line);
    }
    if (lines.empty()) throw IngestError("'" + path + "' is empty");

    const std::string& first = lines.front().second;
    const bool has_semicolon = first.find(';') != std::string::npos;
    const bool has_comma = first.find(',') != std::string::npos;
    const char delim = has_semicolon && !has_comma ? ';' : ',';

    const auto head = split(first, delim);
    // A header row is one whose target column does not parse as a number.
    bool has_header = !is_index(column);
    if (!has_header) {
        const std::size_t idx = std::stoul(column);
        has_header = idx < head.size() && !parse_number(head[idx]) && !is_missing(head[idx]);
    }
    const std::size_t col = locate(head, column, has_header);
    std::optional<std::size_t> date_col;
    if (date_column) date_col = locate(head, *date_column, has_header);

    IngestResult out;
    for (std::size_t r = has_header ? 1 : 0; r < lines.size(); ++r) {
        const auto& [row, text] = lines[r];
        const auto fields = split(text, delim);
        if (col >= fields.size()) {
            std::ostringstream msg;
            msg << "line " << row << ": expected at least " << col + 1 << " fields, found "
                << fields.size();
            throw IngestError(msg.str());
        }
        if (is_missing(fields[col])) {
            ++out.skipped_rows;
            continue;
        }
        const auto value = parse_number(fields[col]);
        if (!value)
            throw IngestError("line " + std::to_string(row) + ": cannot parse '" + fields[col] +
                              "' as a number");
        out.series.push_back(*value);
        out.lines.push_back(row);
        if (date_col) out.dates.push_back(*date_col < fields.size() ? fields[*date_col] : "");
    }
    return out;
}

std::vector<double> log_returns(std::span<const double> prices, std::size_t first_row) {
    std::vector<double> out;
    if (prices.size() < 2) return out;
    out.reserve(prices.size() - 1);
    for (std::size_t i = 0; i < prices.size(); ++i) {
        if (!(prices[i] > 0.0))
            throw IngestError("row " + std::to_string(first_row + i) +
                              ": log returns need strictly positive prices");
        if (i > 0) out.push_back(std::log(prices[i] / prices[i - 1]));
    }
    return out;
}

ArFit fit_ar(std::span<const double> series, std::size_t order) {
    const std::size_t n = series.size();
    if (n <= 2 * order + 1) throw IngestError("series too short for the AR prewhitening order");
    const auto rows = static_cast<Eigen::Index>(n - order);
    const auto cols = static_cast<Eigen::Index>(order + 1);
    Eigen::MatrixXd design(rows, cols);
    Eigen::VectorXd target(rows);
    for (Eigen::Index t = 0; t < rows; ++t) {
        const std::size_t i = static_cast<std::size_t>(t) + order;
        target[t] = series[i];
        design(t, 0) = 1.0;
        for (std::size_t l = 1; l <= order; ++l) design(t, static_cast<Eigen::Index>(l)) = series[i - l];
    }
    const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    ArFit fit;
    fit.coefficients = qr.solve(target);
    const Eigen::VectorXd resid = target - design * fit.coefficients;
    fit.residuals.assign(resid.data(), resid.data() + resid.size());

    fit.std_errors = Eigen::VectorXd::Constant(cols, std::numeric_limits<double>::quiet_NaN());
    if (qr.rank() == cols && rows > cols) {
        const double s2 = resid.squaredNorm() / static_cast<double>(rows - cols);
        const Eigen::MatrixXd cov = (design.transpose() * design).inverse() * s2;
        fit.std_errors = cov.diagonal().cwiseSqrt();
    }
    return fit;
}

IngestResult ingest(const IngestSpec& spec) {
    IngestResult out = read_csv_column(spec.path, spec.column, spec.date_column);
    if (spec.transform == Transform::log_return) {
        for (std::size_t i = 0; i < out.series.size(); ++i)
            if (!(out.series[i] > 0.0))
                throw IngestError("line " + std::to_string(out.lines[i]) +
                                  ": log returns need strictly positive prices");
        out.series = log_returns(out.series, 1);
        if (!out.dates.empty()) out.dates.erase(out.dates.begin());
    }
    if (spec.prewhiten_ar_order > 0) {
        ArFit fit = fit_ar(out.series, spec.prewhiten_ar_order);
        out.series = fit.residuals;
        if (!out.dates.empty())
            out.dates.erase(out.dates.begin(),
                            out.dates.begin() + static_cast<std::ptrdiff_t>(spec.prewhiten_ar_order));
        out.ar = std::move(fit);
    }
    if (out.series.size() < spec.min_rows)
        throw IngestError("only " + std::to_string(out.series.size()) + " usable rows; at least " +
                          std::to_string(spec.min_rows) + " are required");
    return out;
}

}  // namespace gsrww
