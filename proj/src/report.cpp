#include "gsrww/report.hpp"

#include "gsrww/errors.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>

namespace gsrww {

using nlohmann::json;

namespace {

// JSON has no infinities; encode them as strings.
json number(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "nan";
    return v > 0 ? "inf" : "-inf";
}

double to_number(const json& j) {
    if (j.is_number()) return j.get<double>();
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    return std::numeric_limits<double>::quiet_NaN();
}

json matrix_to_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(number(m(i, k)));
        rows.push_back(row);
    }
    return rows;
}

Eigen::MatrixXd matrix_from_json(const json& j) {
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = rows > 0 ? static_cast<Eigen::Index>(j[0].size()) : 0;
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = to_number(j[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]);
    return m;
}

bool params_equal(const GarchParams& a, const GarchParams& b) { return a == b; }

}  // namespace

json params_to_json(const GarchParams& p) {
    return {{"alpha0", p.alpha0}, {"alphas", p.alphas}, {"betas", p.betas}};
}

GarchParams params_from_json(const json& j) {
    return {j.at("alpha0").get<double>(), j.at("alphas").get<std::vector<double>>(),
            j.at("betas").get<std::vector<double>>()};
}

json report_to_json(const TestReport& report) {
    json j;
    j["n"] = report.n;
    j["sup_statistic"] = number(report.sup_statistic);
    j["critical_value"] = number(report.critical_value);
    j["delta"] = report.delta;
    j["reject"] = report.reject;
    j["failures"] = report.failures;
    j["null_reference_mode"] = report.null_ref.mode_name();
    j["null_reference_fixed"] = report.null_ref.value;
    j["null_reference"] = number(report.null_reference);
    j["ci_level"] = report.ci_level;
    j["tau1_hat"] = report.dated_window ? json(report.dated_window->first) : json(nullptr);
    j["tau2_hat"] = report.dated_window ? json(report.dated_window->second) : json(nullptr);
    j["theta_hat"] = report.theta_refit ? params_to_json(*report.theta_refit) : json(nullptr);
    j["theta_out"] = report.theta_out ? params_to_json(*report.theta_out) : json(nullptr);
    if (report.confidence_intervals) {
        json ci = json::array();
        for (const auto& c : *report.confidence_intervals) ci.push_back({c.lower, c.upper});
        j["ci"] = ci;
    } else {
        j["ci"] = nullptr;
    }
    j["diagnostics"] = report.diagnostics;

    json windows = json::array();
    for (const auto& w : report.per_window) {
        json jw{{"j", w.j}, {"k", w.k}, {"tau1", w.tau1}, {"tau2", w.tau2}, {"ok", w.ok}};
        if (w.ok) {
            jw["statistic"] = number(w.statistic);
            jw["theta_hat"] = params_to_json(w.theta_hat);
            jw["theta_bar"] = params_to_json(w.theta_bar);
            jw["reference"] = number(w.reference);
            jw["sigma_h"] = number(w.sigma_h);
            jw["sigma_bar"] = matrix_to_json(w.sigma_bar);
        } else {
            jw["failure"] = w.failure;
        }
        windows.push_back(jw);
    }
    j["windows"] = windows;
    return j;
}

TestReport report_from_json(const json& j) {
    try {
        TestReport r;
        r.n = j.at("n").get<std::size_t>();
        r.sup_statistic = to_number(j.at("sup_statistic"));
        r.critical_value = to_number(j.at("critical_value"));
        r.delta = j.at("delta").get<double>();
        r.reject = j.at("reject").get<bool>();
        r.failures = j.at("failures").get<std::size_t>();
        r.null_ref.mode = j.at("null_reference_mode").get<std::string>() == "fixed"
                              ? NullReference::Mode::fixed
                              : NullReference::Mode::complement;
        r.null_ref.value = j.at("null_reference_fixed").get<double>();
        r.null_reference = to_number(j.at("null_reference"));
        r.ci_level = j.at("ci_level").get<double>();
        if (!j.at("tau1_hat").is_null())
            r.dated_window = std::make_pair(j["tau1_hat"].get<double>(), j.at("tau2_hat").get<double>());
        if (!j.at("theta_hat").is_null()) r.theta_refit = params_from_json(j["theta_hat"]);
        if (!j.at("theta_out").is_null()) r.theta_out = params_from_json(j["theta_out"]);
        if (!j.at("ci").is_null()) {
            std::vector<ConfidenceInterval> ci;
            for (const auto& c : j["ci"]) ci.push_back({c.at(0).get<double>(), c.at(1).get<double>()});
            r.confidence_intervals = std::move(ci);
        }
        r.diagnostics = j.value("diagnostics", "");
        for (const auto& jw : j.at("windows")) {
            WindowStat w;
            w.j = jw.at("j").get<std::size_t>();
            w.k = jw.at("k").get<std::size_t>();
            w.tau1 = jw.at("tau1").get<double>();
            w.tau2 = jw.at("tau2").get<double>();
            w.ok = jw.at("ok").get<bool>();
            if (w.ok) {
                w.statistic = to_number(jw.at("statistic"));
                w.theta_hat = params_from_json(jw.at("theta_hat"));
                w.theta_bar = params_from_json(jw.at("theta_bar"));
                w.reference = to_number(jw.at("reference"));
                w.sigma_h = to_number(jw.at("sigma_h"));
                w.sigma_bar = matrix_from_json(jw.at("sigma_bar"));
            } else {
                w.failure = jw.value("failure", "");
            }
            r.per_window.push_back(std::move(w));
        }
        return r;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed report: ") + e.what());
    }
}

std::string serialize_report(const TestReport& report) { return report_to_json(report).dump(2); }

TestReport parse_report(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed report: ") + e.what());
    }
    return report_from_json(j);
}

bool reports_equal(const TestReport& a, const TestReport& b) {
    auto same = [](double x, double y) { return x == y || (std::isnan(x) && std::isnan(y)); };
    if (a.n != b.n || !same(a.sup_statistic, b.sup_statistic) ||
        !same(a.critical_value, b.critical_value) || a.delta != b.delta || a.reject != b.reject ||
        a.failures != b.failures || a.null_ref.mode != b.null_ref.mode ||
        a.null_ref.value != b.null_ref.value || !same(a.null_reference, b.null_reference) ||
        a.ci_level != b.ci_level || a.dated_window != b.dated_window ||
        a.confidence_intervals != b.confidence_intervals || a.diagnostics != b.diagnostics ||
        a.theta_refit.has_value() != b.theta_refit.has_value() ||
        a.theta_out.has_value() != b.theta_out.has_value() ||
        a.per_window.size() != b.per_window.size())
        return false;
    if (a.theta_refit && !params_equal(*a.theta_refit, *b.theta_refit)) return false;
    if (a.theta_out && !params_equal(*a.theta_out, *b.theta_out)) return false;
    for (std::size_t i = 0; i < a.per_window.size(); ++i) {
        const auto& x = a.per_window[i];
        const auto& y = b.per_window[i];
        if (x.j != y.j || x.k != y.k || x.tau1 != y.tau1 || x.tau2 != y.tau2 || x.ok != y.ok ||
            x.failure != y.failure)
            return false;
        if (!x.ok) continue;
        if (!same(x.statistic, y.statistic) || !params_equal(x.theta_hat, y.theta_hat) ||
            !params_equal(x.theta_bar, y.theta_bar) || !same(x.reference, y.reference) ||
            !same(x.sigma_h, y.sigma_h) || x.sigma_bar.rows() != y.sigma_bar.rows() ||
            x.sigma_bar.cols() != y.sigma_bar.cols() || x.sigma_bar != y.sigma_bar)
            return false;
    }
    return true;
}

void write_window_csv(std::ostream& out, const TestReport& report) {
    out << "tau1,tau2,stat\n";
    out << std::setprecision(17);
    for (const auto& w : report.per_window)
        if (w.ok) out << w.tau1 << ',' << w.tau2 << ',' << w.statistic << '\n';
}

}  // namespace gsrww
