// Command-line front end: run a scenario file or a built-in scenario and
// write a CSV or JSON report.
//
//   osk inverse4 --scenario builtin:golden_two_harmonic --format json
//   osk run --scenario my.json --out result.csv
//
// Exit codes: 0 success, 2 data inconsistency, 1 error.

#include <chrono>
#include <iostream>

#include "CLI11.hpp"
#include "osk/report.hpp"
#include "osk/scenario.hpp"

namespace {

struct Options {
  std::string scenario;
  std::string out;
  std::string format = "csv";
  std::optional<std::size_t> grid;
  std::optional<int> modes;
  std::vector<double> omega_ladder;
  bool timing = false;
};

void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_option("--scenario", opt.scenario, "scenario file, or builtin:<name>")->required();
  cmd->add_option("--out", opt.out, "output path (stdout when omitted)");
  cmd->add_option("--format", opt.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--grid", opt.grid, "Volterra grid size M")->check(CLI::Range(4, 1 << 24));
  cmd->add_option("--modes", opt.modes, "mode truncation N_max")->check(CLI::Range(1, 4096));
  cmd->add_option("--omega-ladder", opt.omega_ladder, "frequencies for the convergence table")->delimiter(',');
  cmd->add_flag("--timing", opt.timing, "append wall-clock seconds to the report");
}

int execute(const Options& opt, std::optional<osk::ScenarioKind> kind) {
  osk::Scenario s = osk::load_scenario(opt.scenario);
  if (kind) s.kind = *kind;
  if (opt.grid) s.grid = *opt.grid;
  if (opt.modes) s.n_max = *opt.modes;
  if (!opt.omega_ladder.empty()) s.omega_ladder = opt.omega_ladder;
  osk::validate(s);

  const auto start = std::chrono::steady_clock::now();
  osk::RunReport report = osk::run(s);
  if (opt.timing)
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  osk::emit(report, opt.format == "json" ? osk::OutputFormat::json : osk::OutputFormat::csv, opt.out);
  return report.data_inconsistent ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Oscillatory-source heat equation: forward, asymptotic and inverse solvers"};
  app.require_subcommand(1);

  Options opt;
  std::vector<std::pair<CLI::App*, std::optional<osk::ScenarioKind>>> commands;
  for (auto kind : {osk::ScenarioKind::forward, osk::ScenarioKind::asymptotics, osk::ScenarioKind::inverse1,
                    osk::ScenarioKind::inverse2, osk::ScenarioKind::inverse3, osk::ScenarioKind::inverse4,
                    osk::ScenarioKind::convergence}) {
    CLI::App* cmd = app.add_subcommand(osk::to_string(kind), std::string("run the scenario as ") + osk::to_string(kind));
    add_common(cmd, opt);
    commands.emplace_back(cmd, kind);
  }
  CLI::App* run_cmd = app.add_subcommand("run", "run the scenario with its own kind");
  add_common(run_cmd, opt);
  commands.emplace_back(run_cmd, std::nullopt);

  CLI11_PARSE(app, argc, argv);

  try {
    for (const auto& [cmd, kind] : commands)
      if (cmd->parsed()) return execute(opt, kind);
  } catch (const std::exception& e) {
    std::cerr << "osk: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
