#ifndef OSK_SCENARIO_HPP
#define OSK_SCENARIO_HPP

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "osk/fast_profile.hpp"
#include "osk/sine_series.hpp"

namespace osk {

enum class ScenarioKind { forward, asymptotics, inverse1, inverse2, inverse3, inverse4, convergence };

const char* to_string(ScenarioKind kind);
std::optional<ScenarioKind> parse_kind(std::string_view text);

/// Malformed scenario; the message names the offending field.
class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Tolerances {
  double lambda = 1e-10;                   // zero test for Lambda_n, scaled by n^-2
  double psi = 1e-12;                      // zero test for psi_n on the Lambda zero set
  std::optional<double> consistency;       // congruence / consistency; module default when unset
  double tail = 1e-8;                      // truncation-tail warning threshold

  friend bool operator==(const Tolerances&, const Tolerances&) = default;
};

/// A runnable experiment. Functions are given only in catalog (term-list)
/// form; which fields are required depends on `kind` (see validate()).
struct Scenario {
  ScenarioKind kind = ScenarioKind::forward;
  std::string name;

  std::optional<SineSeries> f;
  std::optional<SlowFunction> r0;
  std::optional<FastProfile> r1;
  std::optional<SlowFunction> phi0;
  std::optional<FastProfile> phi2;
  std::optional<SineSeries> psi;
  std::vector<SlowFunction> alpha;

  std::optional<double> omega;
  std::vector<double> omega_ladder;
  double horizon = 1.0;
  std::optional<double> t0;
  std::optional<double> delta;
  std::optional<double> x0;
  std::vector<double> x_points;

  int n_max = 32;
  std::size_t grid = 2048;
  std::size_t x_count = 33;
  std::size_t t_count = 0;  // 0: chosen to resolve the fast phase
  Tolerances tolerances;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Throws ScenarioError when a field needed by `s.kind` is missing or a
/// point lies outside its domain.
void validate(const Scenario& s);

Scenario parse_scenario_text(std::string_view text);
Scenario parse_scenario(const std::filesystem::path& path);

/// Built-in scenarios by name; nullopt for unknown names.
std::optional<Scenario> builtin_scenario(std::string_view name);
std::vector<std::string> builtin_scenario_names();

/// Resolves "builtin:<name>" or a file path.
Scenario load_scenario(std::string_view source);

nlohmann::json to_json(const Scenario& s);
std::string serialize(const Scenario& s);

// Catalog term-list encodings shared with the report writer.
nlohmann::json to_json(const SlowFunction& g);
nlohmann::json to_json(const FastProfile& p);
nlohmann::json to_json(const SineSeries& f);
SlowFunction slow_function_from_json(const nlohmann::json& j, const std::string& field);
FastProfile fast_profile_from_json(const nlohmann::json& j, const std::string& field);
SineSeries sine_series_from_json(const nlohmann::json& j, const std::string& field);

}  // namespace osk

#endif  // OSK_SCENARIO_HPP
