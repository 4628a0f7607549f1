#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "osk/report.hpp"
#include "osk/scenario.hpp"

using namespace osk;
using doctest::Approx;
using std::numbers::pi;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_scenario_text(text);
  } catch (const ScenarioError& e) {
    return e.what();
  }
  return "";
}

std::filesystem::path temp_file(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path;
}

const char* forward_text = R"({
  "kind": "forward",
  "omega": 40,
  "horizon": 1,
  "x_count": 5,
  "t_count": 9,
  "functions": {
    "f": [{"n": 1, "coeff": 1}, {"n": 3, "coeff": [{"c": 0.5, "m": 1, "rate": -1}]}],
    "r0": [{"c": 1, "m": 1}],
    "r1": [{"k": 1, "sin": 1}]
  }
})";

}  // namespace

TEST_CASE("built-in golden scenario") {
  const Scenario s = load_scenario("builtin:golden_two_harmonic");
  CHECK(s.kind == ScenarioKind::inverse4);
  CHECK(*s.t0 == 1.0);
  CHECK(*s.x0 == Approx(pi / 2));
  REQUIRE(s.x_points.size() == 2);
  CHECK(s.x_points[0] == Approx(pi / 2));
  CHECK(s.x_points[1] == Approx(pi / 6));
  CHECK(s.grid == 2048);
  CHECK(s.n_max == 32);
  CHECK_NOTHROW(validate(s));
  CHECK_THROWS_AS(load_scenario("builtin:nope"), ScenarioError);
  CHECK(builtin_scenario_names() == std::vector<std::string>{"golden_two_harmonic"});
}

TEST_CASE("defaults and pi expressions") {
  const Scenario s = parse_scenario_text(R"({"kind": "inverse2", "t0": 1, "functions": {"psi": [{"n": 2, "coeff": "pi/4"}], "r0": [{"c": 1, "m": 1}]}})");
  CHECK(s.grid == 2048);
  CHECK(s.n_max == 32);
  CHECK(s.tolerances.lambda == 1e-10);
  CHECK_FALSE(s.tolerances.consistency);
  CHECK(s.psi->coefficient_value(2) == Approx(pi / 4));
  const Scenario p = parse_scenario_text(R"({"kind": "inverse1", "x0": "3*pi/4", "functions": {"f": [{"n":1,"coeff":1}], "phi0": [], "phi2": []}})");
  CHECK(*p.x0 == Approx(3 * pi / 4));
}

TEST_CASE("parse errors name the field") {
  CHECK(error_of("").find("JSON") != std::string::npos);
  CHECK(error_of("[]").find("object") != std::string::npos);
  CHECK(error_of(R"({"kind": "sideways"})").find("'kind'") != std::string::npos);
  CHECK(error_of(R"({"omega": 3})").find("'kind'") != std::string::npos);
  CHECK(error_of(R"({"kind": "forward", "omega": 3, "functions": {"f": []}})").find("functions.r0") != std::string::npos);
  CHECK(error_of(R"({"kind": "inverse1", "x0": 4, "functions": {"f": [], "phi0": [], "phi2": []}})").find("'x0'") !=
        std::string::npos);
  CHECK(error_of(R"({"kind": "forward", "omega": "pie", "functions": {"f": [], "r0": []}})").find("'omega'") !=
        std::string::npos);
  CHECK(error_of(R"({"kind": "forward", "omega": 1, "functions": {"f": [{"n": 0, "coeff": 1}], "r0": []}})")
            .find("functions.f[0].n") != std::string::npos);
  CHECK(error_of(R"({"kind": "forward", "omega": 1, "modes": 0, "functions": {"f": [], "r0": []}})").find("'modes'") !=
        std::string::npos);
  CHECK(error_of(R"({"kind": "inverse4", "t0": 1, "delta": 1.2, "horizon": 2, "x_points": [1, 2],
                     "functions": {"phi0": [], "phi2": [], "alpha": [[]]}})")
            .find("'delta'") != std::string::npos);
  CHECK(error_of(R"({"kind": "inverse4", "t0": 1, "delta": 0.5, "horizon": 2, "x_points": [1, 2],
                     "functions": {"phi0": [], "phi2": [], "alpha": []}})")
            .find("functions.alpha") != std::string::npos);
}

TEST_CASE("empty and missing files") {
  CHECK_THROWS_AS(parse_scenario(temp_file("osk_empty.json", "")), ScenarioError);
  CHECK_THROWS_AS(parse_scenario("/nonexistent/osk.json"), ScenarioError);
  const Scenario s = parse_scenario(temp_file("osk_forward.json", forward_text));
  CHECK(s.kind == ScenarioKind::forward);
}

TEST_CASE("serialize then parse is the identity") {
  for (const std::string text : {std::string(forward_text)}) {
    const Scenario s = parse_scenario_text(text);
    CHECK(parse_scenario_text(serialize(s)) == s);
  }
  Scenario golden = *builtin_scenario("golden_two_harmonic");
  CHECK(parse_scenario_text(serialize(golden)) == golden);
  golden.tolerances.consistency = 3e-7;
  golden.kind = ScenarioKind::convergence;
  CHECK(parse_scenario_text(serialize(golden)) == golden);
}

TEST_CASE("golden inverse4 run") {
  const RunReport rep = run(*builtin_scenario("golden_two_harmonic"));
  CHECK_FALSE(rep.data_inconsistent);
  const auto f = sine_series_from_json(rep.results["f"], "f");
  CHECK(std::abs(f.coefficient_value(1) - 1.0) < 1e-10);
  CHECK(std::abs(f.coefficient_value(2) - 1.0) < 1e-10);
  REQUIRE(rep.columns == std::vector<std::string>{"t", "r0"});
  double err = 0.0;
  for (const auto& row : rep.rows) err = std::max(err, std::abs(row[1] - row[0]));
  CHECK(err < 1e-6);
  CHECK(rep.results["consistency_residual"].get<double>() < 1e-8);
}

TEST_CASE("forward with zero source emits a zero field") {
  Scenario s = parse_scenario_text(forward_text);
  s.f = SineSeries{};
  const RunReport rep = run(s);
  REQUIRE(rep.rows.size() == 5 * 9);
  for (const auto& row : rep.rows) CHECK(row[2] == 0.0);
}

TEST_CASE("convergence table is monotone on the golden ladder") {
  Scenario s = *builtin_scenario("golden_two_harmonic");
  s.kind = ScenarioKind::convergence;
  s.x_count = 17;
  const RunReport rep = run(s);
  CHECK(rep.columns == std::vector<std::string>{"omega", "residual_order1", "residual_order2", "omega_times_residual2"});
  REQUIRE(rep.rows.size() == 4);
  for (std::size_t i = 1; i < rep.rows.size(); ++i) {
    CHECK(rep.rows[i][3] < rep.rows[i - 1][3]);
    CHECK(rep.rows[i][1] < rep.rows[i - 1][1]);
  }
}

TEST_CASE("unsolvable inverse2 is flagged as data inconsistency") {
  const Scenario s = parse_scenario_text(R"({"kind": "inverse2", "t0": 1,
    "functions": {"psi": [{"n": 1, "coeff": 0.3}],
                  "r0": [{"c": 1, "m": 1}, {"c": -0.5819767068693265, "m": 0}]}})");
  const RunReport rep = run(s);
  CHECK(rep.results["status"] == "unsolvable");
  CHECK(rep.data_inconsistent);
}

TEST_CASE("module errors carry the scenario context") {
  Scenario s = *builtin_scenario("golden_two_harmonic");
  s.kind = ScenarioKind::inverse1;
  s.f = SineSeries::from_constants({0.0, 1.0});  // vanishes at x0 = pi/2
  try {
    run(s);
    FAIL("expected an error");
  } catch (const std::runtime_error& e) {
    const std::string msg = e.what();
    CHECK(msg.find("inverse1 'golden_two_harmonic'") != std::string::npos);
  }
}

TEST_CASE("rendering is deterministic and echoes the input") {
  const Scenario s = parse_scenario_text(forward_text);
  const std::string a = render(run(s), OutputFormat::csv);
  const std::string b = render(run(s), OutputFormat::csv);
  CHECK(a == b);
  CHECK(a.rfind("# kind: forward\n# input: {", 0) == 0);
  CHECK(a.find("\nx,t,u\n") != std::string::npos);

  // the echoed input re-runs to the same report
  const std::string line = a.substr(a.find("# input: ") + 9, a.find('\n', a.find("# input: ")) - a.find("# input: ") - 9);
  CHECK(render(run(parse_scenario_text(line)), OutputFormat::csv) == a);

  const std::string j1 = render(run(s), OutputFormat::json);
  const auto parsed = nlohmann::json::parse(j1);
  CHECK(parsed["kind"] == "forward");
  CHECK(parsed["input"] == to_json(s));
  CHECK(parsed["table"]["rows"].size() == 45);
  CHECK_FALSE(parsed.contains("seconds"));
}
