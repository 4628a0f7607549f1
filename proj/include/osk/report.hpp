#ifndef OSK_REPORT_HPP
#define OSK_REPORT_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "osk/scenario.hpp"

namespace osk {

enum class OutputFormat { csv, json };

/// Outcome of one scenario run. Everything except `seconds` is a pure
/// function of the scenario, so rendered output is byte-reproducible.
struct RunReport {
  ScenarioKind kind = ScenarioKind::forward;
  nlohmann::json input;    // full scenario echo
  nlohmann::json results;  // scalars, flags and recovered functions
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> warnings;
  bool data_inconsistent = false;  // unsolvable or failed consistency check
  std::optional<double> seconds;
};

/// Runs the pipeline selected by `s.kind`. Module errors are rethrown as
/// std::runtime_error prefixed with the scenario kind and name.
RunReport run(const Scenario& s);

std::string render(const RunReport& report, OutputFormat format);
void emit(const RunReport& report, OutputFormat format, std::ostream& out);
/// Writes to `path`, or to stdout when `path` is empty or "-".
void emit(const RunReport& report, OutputFormat format, const std::string& path);

}  // namespace osk

#endif  // OSK_REPORT_HPP
