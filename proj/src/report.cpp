#include "osk/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "osk/asymptotics.hpp"
#include "osk/forward_solver.hpp"
#include "osk/inverse.hpp"

namespace osk {

using nlohmann::json;

namespace {

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

SourceFactor source_of(const Scenario& s) { return SourceFactor{*s.r0, s.r1.value_or(FastProfile{})}; }

HeatProblem heat_problem(const Scenario& s, double omega) {
  HeatProblem p{*s.f, source_of(s), omega, s.horizon, s.n_max};
  p.validate();
  return p;
}

std::size_t t_count_for(const Scenario& s, double omega) {
  return s.t_count != 0 ? s.t_count : resolving_t_count(omega, s.horizon);
}

// Residuals are sup norms, so they are always measured on a grid that
// resolves the fast phase, whatever the output grid is.
std::size_t residual_t_count(const Scenario& s, double omega) {
  return std::max(t_count_for(s, omega), resolving_t_count(omega, s.horizon));
}

void table_from_field(RunReport& rep, const GridFunction& field, const std::vector<const GridFunction*>& extra) {
  const Axis& xa = field.axis(0);
  const Axis& ta = field.axis(1);
  for (std::size_t i = 0; i < xa.count; ++i)
    for (std::size_t j = 0; j < ta.count; ++j) {
      std::vector<double> row{xa.node(i), ta.node(j), field.at(i, j)};
      for (const GridFunction* g : extra) row.push_back(g->at(i, j));
      rep.rows.push_back(std::move(row));
    }
}

void run_forward(const Scenario& s, RunReport& rep) {
  const HeatProblem p = heat_problem(s, *s.omega);
  HeatSolution sol = solve_heat(p, s.x_count, t_count_for(s, *s.omega), s.tolerances.tail);
  rep.columns = {"x", "t", "u"};
  table_from_field(rep, sol.field, {});
  rep.results["tail_estimate"] = sol.tail_estimate;
  rep.results["sup_norm"] = sol.field.sup_norm();
  rep.warnings = std::move(sol.warnings);
}

void run_asymptotics(const Scenario& s, RunReport& rep) {
  const double omega = *s.omega;
  const HeatProblem p = heat_problem(s, omega);
  const AsymptoticExpansion exp(p.f, p.r, s.n_max);
  const std::size_t tc = t_count_for(s, omega);
  const GridFunction full = compose(exp, omega, s.x_count, tc, s.horizon, 2);
  const GridFunction lead = compose(exp, omega, s.x_count, tc, s.horizon, 1);
  rep.columns = {"x", "t", "expansion", "u0"};
  table_from_field(rep, full, {&lead});
  rep.results["omega"] = omega;
  const std::size_t rc = residual_t_count(s, omega);
  rep.results["residual_order1"] = residual_norm(p, exp, 1, s.x_count, rc);
  rep.results["residual_order2"] = residual_norm(p, exp, 2, s.x_count, rc);
  rep.results["initial_layer_mean"] = exp.initial_layer().mean_constant();
  rep.results["corrector_fast_factor"] = to_json(exp.corrector().fast_factor());
}

void run_convergence(const Scenario& s, RunReport& rep) {
  rep.columns = {"omega", "residual_order1", "residual_order2", "omega_times_residual2"};
  std::vector<double> r1s, r2s;
  for (double omega : s.omega_ladder) {
    const HeatProblem p = heat_problem(s, omega);
    const AsymptoticExpansion exp(p.f, p.r, s.n_max);
    const std::size_t tc = residual_t_count(s, omega);
    const double r1 = residual_norm(p, exp, 1, s.x_count, tc);
    const double r2 = residual_norm(p, exp, 2, s.x_count, tc);
    rep.rows.push_back({omega, r1, r2, omega * r2});
    r1s.push_back(r1);
    r2s.push_back(omega * r2);
  }
  auto strictly_decreasing = [](const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
      if (!(v[i] < v[i - 1])) return false;
    return true;
  };
  rep.results["residual_order1_decreasing"] = strictly_decreasing(r1s);
  rep.results["omega_times_residual2_decreasing"] = strictly_decreasing(r2s);
}

void run_inverse1(const Scenario& s, RunReport& rep) {
  ObservationP1 obs{*s.x0, s.horizon, *s.phi0, *s.phi2, std::nullopt};
  const Problem1Result res = recover_problem1(obs, *s.f, s.n_max, s.grid);
  rep.columns = {"t", "r0"};
  for (std::size_t i = 0; i < res.r0.axis(0).count; ++i) rep.rows.push_back({res.r0.axis(0).node(i), res.r0[i]});
  rep.results["r1"] = to_json(res.r1);
  rep.results["phi1"] = to_json(res.phi1);
}

void run_inverse2(const Scenario& s, RunReport& rep) {
  const Problem2Result res =
      recover_problem2({*s.t0, *s.psi}, *s.r0, s.n_max, s.tolerances.lambda, s.tolerances.psi);
  rep.columns = {"n", "psi_n", "lambda_n", "f_n", "in_zero_set"};
  for (int n = 1; n <= s.n_max; ++n)
    rep.rows.push_back({double(n), s.psi->coefficient_value(n, 0.0), res.spectrum.value(n),
                        res.f.coefficient_value(n, 0.0), res.spectrum.is_zero(n) ? 1.0 : 0.0});
  rep.results["status"] = to_string(res.status);
  rep.results["zero_modes"] = res.zero_modes;
  rep.results["offending_modes"] = res.offending_modes;
  rep.results["lambda_floor"] = res.spectrum.floor;
  rep.results["f"] = to_json(res.f);
  rep.warnings = res.warnings;
  rep.data_inconsistent = res.status == Solvability::unsolvable;
}

void run_inverse3(const Scenario& s, RunReport& rep) {
  ObservationP3 obs{*s.t0, *s.psi, *s.x0, s.horizon, *s.phi0, *s.phi2};
  const Problem3Result res =
      recover_problem3(obs, *s.r0, s.n_max, s.grid, s.tolerances.consistency, s.tolerances.lambda);
  rep.columns = {"n", "f_n"};
  for (const auto& [n, c] : res.f.modes()) rep.rows.push_back({double(n), c(0.0)});
  rep.results["f"] = to_json(res.f);
  rep.results["r1"] = to_json(res.r1);
  rep.results["phi1"] = to_json(res.phi1);
  rep.results["congruence_residual"] = res.congruence_residual;
  rep.results["tolerance"] = res.tolerance;
  rep.results["consistent"] = res.consistent;
  rep.data_inconsistent = !res.consistent;
}

void run_inverse4(const Scenario& s, RunReport& rep) {
  ObservationP4 obs{*s.t0, *s.delta, s.horizon, s.x_points, *s.phi0, *s.phi2, s.alpha};
  const Problem4Result res = recover_problem4(obs, s.grid, s.tolerances.consistency);
  rep.columns = {"t", "r0"};
  for (std::size_t i = 0; i < res.r0.axis(0).count; ++i) rep.rows.push_back({res.r0.axis(0).node(i), res.r0[i]});
  rep.results["psi"] = res.psi;
  rep.results["f_system"] = res.f_system;
  rep.results["f"] = to_json(res.f);
  rep.results["l_at_t0"] = res.l_at_t0;
  rep.results["r1"] = to_json(res.r1);
  rep.results["phi1"] = to_json(res.phi1);
  rep.results["consistency_residuals"] = res.consistency_residuals;
  rep.results["consistency_residual"] = res.consistency_residual;
  rep.results["tolerance"] = res.tolerance;
  rep.results["consistent"] = res.consistent;
  rep.results["rcond"] = res.rcond;
  rep.data_inconsistent = !res.consistent;
}

}  // namespace

RunReport run(const Scenario& s) {
  validate(s);
  RunReport rep;
  rep.kind = s.kind;
  rep.input = to_json(s);
  rep.results = json::object();
  try {
    switch (s.kind) {
      case ScenarioKind::forward: run_forward(s, rep); break;
      case ScenarioKind::asymptotics: run_asymptotics(s, rep); break;
      case ScenarioKind::convergence: run_convergence(s, rep); break;
      case ScenarioKind::inverse1: run_inverse1(s, rep); break;
      case ScenarioKind::inverse2: run_inverse2(s, rep); break;
      case ScenarioKind::inverse3: run_inverse3(s, rep); break;
      case ScenarioKind::inverse4: run_inverse4(s, rep); break;
    }
  } catch (const std::exception& e) {
    std::string where = std::string(to_string(s.kind));
    if (!s.name.empty()) where += " '" + s.name + "'";
    throw std::runtime_error(where + ": " + e.what());
  }
  return rep;
}

std::string render(const RunReport& report, OutputFormat format) {
  std::ostringstream out;
  if (format == OutputFormat::json) {
    json j;
    j["kind"] = to_string(report.kind);
    j["input"] = report.input;
    j["results"] = report.results;
    j["table"] = {{"columns", report.columns}, {"rows", report.rows}};
    j["warnings"] = report.warnings;
    j["data_inconsistent"] = report.data_inconsistent;
    if (report.seconds) j["seconds"] = *report.seconds;
    out << j.dump(2) << '\n';
    return out.str();
  }

  out << "# kind: " << to_string(report.kind) << '\n';
  out << "# input: " << report.input.dump() << '\n';
  for (const auto& [key, value] : report.results.items()) {
    out << "# " << key << ": ";
    if (value.is_number_float())
      out << number(value.get<double>());
    else if (value.is_string())
      out << value.get<std::string>();
    else
      out << value.dump();
    out << '\n';
  }
  out << "# data_inconsistent: " << (report.data_inconsistent ? "true" : "false") << '\n';
  for (const auto& w : report.warnings) out << "# warning: " << w << '\n';
  if (report.seconds) out << "# seconds: " << number(*report.seconds) << '\n';
  for (std::size_t c = 0; c < report.columns.size(); ++c) out << (c ? "," : "") << report.columns[c];
  out << '\n';
  for (const auto& row : report.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << number(row[c]);
    out << '\n';
  }
  return out.str();
}

void emit(const RunReport& report, OutputFormat format, std::ostream& out) { out << render(report, format); }

void emit(const RunReport& report, OutputFormat format, const std::string& path) {
  if (path.empty() || path == "-") {
    emit(report, format, std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
  emit(report, format, out);
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace osk
