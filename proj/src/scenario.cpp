#include "osk/scenario.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace osk {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ScenarioError("scenario field '" + field + "': " + what);
}

constexpr std::pair<ScenarioKind, const char*> kKinds[] = {
    {ScenarioKind::forward, "forward"},         {ScenarioKind::asymptotics, "asymptotics"},
    {ScenarioKind::inverse1, "inverse1"},       {ScenarioKind::inverse2, "inverse2"},
    {ScenarioKind::inverse3, "inverse3"},       {ScenarioKind::inverse4, "inverse4"},
    {ScenarioKind::convergence, "convergence"},
};

/// Number, or a string "pi", "pi/2", "3*pi/4", "0.25".
double parse_real(const json& j, const std::string& field) {
  if (j.is_number()) return j.get<double>();
  if (!j.is_string()) fail(field, "expected a number or a pi expression");
  std::string s = j.get<std::string>();
  std::erase_if(s, [](char c) { return c == ' '; });
  try {
    const auto pi_pos = s.find("pi");
    if (pi_pos == std::string::npos) {
      std::size_t used = 0;
      double v = std::stod(s, &used);
      if (used != s.size()) fail(field, "cannot parse '" + s + "'");
      return v;
    }
    double coeff = 1.0;
    if (pi_pos > 0) {
      std::string head = s.substr(0, pi_pos);
      if (head.back() != '*') fail(field, "expected '<c>*pi' in '" + s + "'");
      head.pop_back();
      coeff = std::stod(head);
    }
    std::string rest = s.substr(pi_pos + 2);
    double denom = 1.0;
    if (!rest.empty()) {
      if (rest.front() != '/') fail(field, "expected 'pi/<d>' in '" + s + "'");
      std::size_t used = 0;
      denom = std::stod(rest.substr(1), &used);
      if (used + 1 != rest.size()) fail(field, "cannot parse '" + s + "'");
    }
    return coeff * std::numbers::pi / denom;
  } catch (const std::invalid_argument&) {
    fail(field, "cannot parse '" + s + "'");
  } catch (const std::out_of_range&) {
    fail(field, "value out of range in '" + s + "'");
  }
}

const json* find(const json& j, const char* key) {
  auto it = j.find(key);
  return it == j.end() || it->is_null() ? nullptr : &*it;
}

std::optional<double> optional_real(const json& j, const char* key) {
  if (const json* v = find(j, key)) return parse_real(*v, key);
  return std::nullopt;
}

std::vector<double> real_list(const json& j, const char* key) {
  std::vector<double> out;
  const json* v = find(j, key);
  if (!v) return out;
  if (!v->is_array()) fail(key, "expected a list");
  for (std::size_t i = 0; i < v->size(); ++i)
    out.push_back(parse_real((*v)[i], std::string(key) + "[" + std::to_string(i) + "]"));
  return out;
}

template <class T>
T integer_field(const json& j, const char* key, T fallback, long long min_value) {
  const json* v = find(j, key);
  if (!v) return fallback;
  if (!v->is_number_integer()) fail(key, "expected an integer");
  const long long x = v->get<long long>();
  if (x < min_value) fail(key, "must be >= " + std::to_string(min_value));
  return static_cast<T>(x);
}

bool interior_x(double x) { return x > 0.0 && x < std::numbers::pi; }

}  // namespace

const char* to_string(ScenarioKind kind) {
  for (const auto& [k, name] : kKinds)
    if (k == kind) return name;
  return "unknown";
}

std::optional<ScenarioKind> parse_kind(std::string_view text) {
  for (const auto& [k, name] : kKinds)
    if (text == name) return k;
  return std::nullopt;
}

json to_json(const SlowFunction& g) {
  json out = json::array();
  for (const auto& t : g.terms()) out.push_back({{"c", t.coeff}, {"m", t.power}, {"rate", t.rate}});
  return out;
}

json to_json(const FastProfile& p) {
  json out = json::array();
  for (const auto& h : p.harmonics()) out.push_back({{"k", h.k}, {"cos", to_json(h.cos_amp)}, {"sin", to_json(h.sin_amp)}});
  return out;
}

json to_json(const SineSeries& f) {
  json out = json::array();
  for (const auto& [n, c] : f.modes()) out.push_back({{"n", n}, {"coeff", to_json(c)}});
  return out;
}

SlowFunction slow_function_from_json(const json& j, const std::string& field) {
  if (j.is_number() || j.is_string()) return SlowFunction::constant(parse_real(j, field));
  if (!j.is_array()) fail(field, "expected a term list [{\"c\":..,\"m\":..,\"rate\":..}]");
  std::vector<SlowTerm> terms;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string sub = field + "[" + std::to_string(i) + "]";
    const json& t = j[i];
    if (!t.is_object()) fail(sub, "expected a term object");
    const json* c = find(t, "c");
    if (!c) fail(sub + ".c", "missing coefficient");
    SlowTerm term;
    term.coeff = parse_real(*c, sub + ".c");
    term.power = integer_field<int>(t, "m", 0, 0);
    if (const json* r = find(t, "rate")) term.rate = parse_real(*r, sub + ".rate");
    terms.push_back(term);
  }
  try {
    return SlowFunction(std::move(terms));
  } catch (const std::exception& e) {
    fail(field, e.what());
  }
}

FastProfile fast_profile_from_json(const json& j, const std::string& field) {
  if (!j.is_array()) fail(field, "expected a harmonic list [{\"k\":..,\"cos\":[..],\"sin\":[..]}]");
  std::vector<Harmonic> hs;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string sub = field + "[" + std::to_string(i) + "]";
    const json& h = j[i];
    if (!h.is_object()) fail(sub, "expected a harmonic object");
    Harmonic harm;
    const json* k = find(h, "k");
    if (!k) fail(sub + ".k", "missing harmonic index");
    if (!k->is_number_integer() || k->get<long long>() < 1) fail(sub + ".k", "must be an integer >= 1");
    harm.k = k->get<int>();
    if (const json* c = find(h, "cos")) harm.cos_amp = slow_function_from_json(*c, sub + ".cos");
    if (const json* s = find(h, "sin")) harm.sin_amp = slow_function_from_json(*s, sub + ".sin");
    hs.push_back(std::move(harm));
  }
  return FastProfile(std::move(hs));
}

SineSeries sine_series_from_json(const json& j, const std::string& field) {
  if (!j.is_array()) fail(field, "expected a mode list [{\"n\":..,\"coeff\":..}]");
  std::map<int, SlowFunction> modes;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string sub = field + "[" + std::to_string(i) + "]";
    const json& m = j[i];
    if (!m.is_object()) fail(sub, "expected a mode object");
    const json* n = find(m, "n");
    if (!n || !n->is_number_integer() || n->get<long long>() < 1) fail(sub + ".n", "must be an integer >= 1");
    const json* c = find(m, "coeff");
    if (!c) fail(sub + ".coeff", "missing coefficient");
    modes[n->get<int>()] += slow_function_from_json(*c, sub + ".coeff");
  }
  return SineSeries(std::move(modes));
}

void validate(const Scenario& s) {
  const std::string kind = to_string(s.kind);
  auto need = [&](bool present, const std::string& field) {
    if (!present) fail(field, "required for kind '" + kind + "'");
  };
  if (!(s.horizon > 0.0)) fail("horizon", "must be > 0");
  if (s.n_max < 1) fail("modes", "must be >= 1");
  if (s.grid < 4) fail("grid", "must be >= 4");
  if (s.x_count < 2) fail("x_count", "must be >= 2");
  if (s.t_count == 1) fail("t_count", "must be 0 (automatic) or >= 2");
  if (s.omega && !(*s.omega > 0.0)) fail("omega", "must be > 0");
  for (double w : s.omega_ladder)
    if (!(w > 0.0)) fail("omega_ladder", "entries must be > 0");
  if (s.x0 && !interior_x(*s.x0)) fail("x0", "must lie in (0, pi)");
  for (double x : s.x_points)
    if (!interior_x(x)) fail("x_points", "entries must lie in (0, pi)");
  if (s.t0 && !(*s.t0 > 0.0 && *s.t0 <= s.horizon)) fail("t0", "must lie in (0, horizon]");

  switch (s.kind) {
    case ScenarioKind::forward:
    case ScenarioKind::asymptotics:
      need(s.f.has_value(), "functions.f");
      need(s.r0.has_value(), "functions.r0");
      need(s.omega.has_value(), "omega");
      break;
    case ScenarioKind::convergence:
      need(s.f.has_value(), "functions.f");
      need(s.r0.has_value(), "functions.r0");
      need(!s.omega_ladder.empty(), "omega_ladder");
      break;
    case ScenarioKind::inverse1:
      need(s.f.has_value(), "functions.f");
      need(s.x0.has_value(), "x0");
      need(s.phi0.has_value(), "functions.phi0");
      need(s.phi2.has_value(), "functions.phi2");
      break;
    case ScenarioKind::inverse2:
      need(s.psi.has_value(), "functions.psi");
      need(s.r0.has_value(), "functions.r0");
      need(s.t0.has_value(), "t0");
      break;
    case ScenarioKind::inverse3:
      need(s.psi.has_value(), "functions.psi");
      need(s.r0.has_value(), "functions.r0");
      need(s.t0.has_value(), "t0");
      need(s.x0.has_value(), "x0");
      need(s.phi0.has_value(), "functions.phi0");
      need(s.phi2.has_value(), "functions.phi2");
      break;
    case ScenarioKind::inverse4:
      need(s.t0.has_value(), "t0");
      need(s.delta.has_value(), "delta");
      need(!s.x_points.empty(), "x_points");
      need(s.phi0.has_value(), "functions.phi0");
      need(s.phi2.has_value(), "functions.phi2");
      if (s.alpha.size() + 1 != s.x_points.size())
        fail("functions.alpha", "need exactly one function per x point after the first");
      if (!(*s.delta > 0.0 && *s.t0 - *s.delta > 0.0 && *s.t0 + *s.delta < s.horizon))
        fail("delta", "window (t0 - delta, t0 + delta) must lie inside (0, horizon)");
      break;
  }
}

Scenario parse_scenario_text(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ScenarioError(std::string("scenario is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ScenarioError("scenario must be a JSON object");

  Scenario s;
  const json* kind = find(j, "kind");
  if (!kind || !kind->is_string()) fail("kind", "missing");
  auto k = parse_kind(kind->get<std::string>());
  if (!k) fail("kind", "unknown kind '" + kind->get<std::string>() + "'");
  s.kind = *k;
  if (const json* n = find(j, "name")) s.name = n->get<std::string>();

  if (auto h = optional_real(j, "horizon")) s.horizon = *h;
  s.omega = optional_real(j, "omega");
  s.omega_ladder = real_list(j, "omega_ladder");
  s.t0 = optional_real(j, "t0");
  s.delta = optional_real(j, "delta");
  s.x0 = optional_real(j, "x0");
  s.x_points = real_list(j, "x_points");
  s.n_max = integer_field<int>(j, "modes", s.n_max, 1);
  s.grid = integer_field<std::size_t>(j, "grid", s.grid, 4);
  s.x_count = integer_field<std::size_t>(j, "x_count", s.x_count, 2);
  s.t_count = integer_field<std::size_t>(j, "t_count", s.t_count, 0);

  if (const json* tol = find(j, "tolerances")) {
    if (!tol->is_object()) fail("tolerances", "expected an object");
    if (auto v = optional_real(*tol, "lambda")) s.tolerances.lambda = *v;
    if (auto v = optional_real(*tol, "psi")) s.tolerances.psi = *v;
    if (auto v = optional_real(*tol, "tail")) s.tolerances.tail = *v;
    s.tolerances.consistency = optional_real(*tol, "consistency");
  }

  if (const json* fns = find(j, "functions")) {
    if (!fns->is_object()) fail("functions", "expected an object");
    if (const json* v = find(*fns, "f")) s.f = sine_series_from_json(*v, "functions.f");
    if (const json* v = find(*fns, "psi")) s.psi = sine_series_from_json(*v, "functions.psi");
    if (const json* v = find(*fns, "r0")) s.r0 = slow_function_from_json(*v, "functions.r0");
    if (const json* v = find(*fns, "phi0")) s.phi0 = slow_function_from_json(*v, "functions.phi0");
    if (const json* v = find(*fns, "r1")) s.r1 = fast_profile_from_json(*v, "functions.r1");
    if (const json* v = find(*fns, "phi2")) s.phi2 = fast_profile_from_json(*v, "functions.phi2");
    if (const json* v = find(*fns, "alpha")) {
      if (!v->is_array()) fail("functions.alpha", "expected a list of term lists");
      for (std::size_t i = 0; i < v->size(); ++i)
        s.alpha.push_back(slow_function_from_json((*v)[i], "functions.alpha[" + std::to_string(i) + "]"));
    }
  }
  validate(s);
  return s;
}

Scenario parse_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario file '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  if (text.find_first_not_of(" \t\r\n") == std::string::npos)
    throw ScenarioError("scenario file '" + path.string() + "' is empty");
  return parse_scenario_text(text);
}

namespace {

Scenario golden_two_harmonic() {
  const double sqrt3 = std::sqrt(3.0);
  Scenario s;
  s.kind = ScenarioKind::inverse4;
  s.name = "golden_two_harmonic";
  s.horizon = 2.0;
  s.t0 = 1.0;
  s.delta = 0.5;
  s.x0 = std::numbers::pi / 2;
  s.x_points = {std::numbers::pi / 2, std::numbers::pi / 6};
  s.omega = 100.0;
  s.omega_ladder = {64.0, 128.0, 256.0, 512.0};
  s.f = SineSeries::from_constants({1.0, 1.0});
  s.r0 = SlowFunction::monomial(1.0, 1);
  s.r1 = FastProfile::sine(1, SlowFunction::constant(1.0));
  // e^{-t} + t - 1
  s.phi0 = SlowFunction({{1.0, 0, -1.0}, {1.0, 1, 0.0}, {-1.0, 0, 0.0}});
  s.phi2 = FastProfile::cosine(1, SlowFunction::constant(-1.0));
  // (t + e^{-t} - 1)/2 + sqrt3/32 (4t + e^{-4t} - 1)
  s.alpha = {SlowFunction({{0.5, 1, 0.0},
                           {0.5, 0, -1.0},
                           {-0.5, 0, 0.0},
                           {sqrt3 / 8.0, 1, 0.0},
                           {sqrt3 / 32.0, 0, -4.0},
                           {-sqrt3 / 32.0, 0, 0.0}})};
  s.psi = SineSeries::from_constants({std::exp(-1.0), (3.0 + std::exp(-4.0)) / 16.0});
  return s;
}

}  // namespace

std::optional<Scenario> builtin_scenario(std::string_view name) {
  if (name == "golden_two_harmonic") return golden_two_harmonic();
  return std::nullopt;
}

std::vector<std::string> builtin_scenario_names() { return {"golden_two_harmonic"}; }

Scenario load_scenario(std::string_view source) {
  constexpr std::string_view prefix = "builtin:";
  if (source.substr(0, prefix.size()) == prefix) {
    auto s = builtin_scenario(source.substr(prefix.size()));
    if (!s) throw ScenarioError("unknown built-in scenario '" + std::string(source.substr(prefix.size())) + "'");
    return *s;
  }
  return parse_scenario(std::filesystem::path(std::string(source)));
}

json to_json(const Scenario& s) {
  json j;
  j["kind"] = to_string(s.kind);
  if (!s.name.empty()) j["name"] = s.name;
  j["horizon"] = s.horizon;
  if (s.omega) j["omega"] = *s.omega;
  if (!s.omega_ladder.empty()) j["omega_ladder"] = s.omega_ladder;
  if (s.t0) j["t0"] = *s.t0;
  if (s.delta) j["delta"] = *s.delta;
  if (s.x0) j["x0"] = *s.x0;
  if (!s.x_points.empty()) j["x_points"] = s.x_points;
  j["modes"] = s.n_max;
  j["grid"] = s.grid;
  j["x_count"] = s.x_count;
  j["t_count"] = s.t_count;
  json tol = {{"lambda", s.tolerances.lambda}, {"psi", s.tolerances.psi}, {"tail", s.tolerances.tail}};
  if (s.tolerances.consistency) tol["consistency"] = *s.tolerances.consistency;
  j["tolerances"] = tol;
  json fns = json::object();
  if (s.f) fns["f"] = to_json(*s.f);
  if (s.psi) fns["psi"] = to_json(*s.psi);
  if (s.r0) fns["r0"] = to_json(*s.r0);
  if (s.r1) fns["r1"] = to_json(*s.r1);
  if (s.phi0) fns["phi0"] = to_json(*s.phi0);
  if (s.phi2) fns["phi2"] = to_json(*s.phi2);
  if (!s.alpha.empty()) {
    json a = json::array();
    for (const auto& g : s.alpha) a.push_back(to_json(g));
    fns["alpha"] = a;
  }
  j["functions"] = fns;
  return j;
}

std::string serialize(const Scenario& s) { return to_json(s).dump(2); }

}  // namespace osk
