#pragma once

#include "gsrww/suptest.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>

namespace gsrww {

/// Stable JSON form of a report. Top-level keys include sup_statistic,
/// critical_value, reject, tau1_hat, tau2_hat, theta_hat and ci.
nlohmann::json report_to_json(const TestReport& report);
TestReport report_from_json(const nlohmann::json& j);

std::string serialize_report(const TestReport& report);
TestReport parse_report(const std::string& text);

/// Field-by-field equality (matrices compared exactly).
bool reports_equal(const TestReport& a, const TestReport& b);

/// Columns tau1,tau2,stat; failed windows are omitted.
void write_window_csv(std::ostream& out, const TestReport& report);

nlohmann::json params_to_json(const GarchParams& p);
GarchParams params_from_json(const nlohmann::json& j);

}  // namespace gsrww
