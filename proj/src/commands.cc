#include "fracdelay/commands.h"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fracdelay/analysis.h"
#include "fracdelay/config_io.h"
#include "fracdelay/errors.h"
#include "fracdelay/scenarios.h"
#include "fracdelay/solver.h"
#include "fracdelay/special_functions.h"
#include "fracdelay/trajectory_io.h"

namespace fracdelay {
namespace {

std::string Shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

int ExitCodeFor(const std::exception& e) {
  if (dynamic_cast<const ValidationError*>(&e) ||
      dynamic_cast<const ConfigError*>(&e) ||
      dynamic_cast<const ParseError*>(&e) ||
      dynamic_cast<const DomainError*>(&e) ||
      dynamic_cast<const DimensionError*>(&e)) {
    return kExitInvalid;
  }
  return kExitNumeric;
}

std::string PicardPath(const std::string& path) {
  const auto slash = path.find_last_of('/');
  const auto dot = path.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
    return path + "_picard";
  }
  return path.substr(0, dot) + "_picard" + path.substr(dot);
}

void WriteText(const std::string& path, std::string_view text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open " + path + " for writing");
  file.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!file) throw std::runtime_error("failed writing " + path);
}

std::optional<RealVector> ToVector(const std::vector<double>& v) {
  if (v.empty()) return std::nullopt;
  return Eigen::Map<const RealVector>(v.data(),
                                      static_cast<Eigen::Index>(v.size()));
}

struct SimulateArgs {
  std::string config;
  double step = 0.01;
  double t_end = 50.0;
  std::string out_path;
  std::string oracle;
  double oracle_tol = 1e-10;
};

int DoSimulate(const SystemConfig& cfg, const SimulateArgs& a,
               std::ostream& out, std::ostream& err) {
  const Grid grid = Grid::FromStep(a.step, a.t_end);
  const Trajectory traj = Simulate(cfg.system, cfg.init, grid);
  WriteTrajectoryCsv(traj, a.out_path);
  out << "wrote " << traj.size() << " rows to " << a.out_path << "\n";
  if (a.oracle.empty()) return kExitOk;

  PicardOptions opt;
  opt.tol = a.oracle_tol;
  const PicardResult pic = PicardSolve(cfg.system, cfg.init, grid, opt);
  const std::string pic_path = PicardPath(a.out_path);
  WriteTrajectoryCsv(pic.trajectory, pic_path);
  out << "wrote " << pic.trajectory.size() << " rows to " << pic_path << "\n";
  if (!pic.converged) {
    err << "warning: picard iteration did not converge in some window "
           "(worst increment "
        << Shortest(pic.worst_increment) << ")\n";
  }
  out << "sup_difference " << Shortest(SupDistance(traj, pic.trajectory))
      << "\n";
  return kExitOk;
}

struct AnalyzeArgs {
  std::string config;
  std::vector<double> F;
  std::vector<double> G;
  std::string regime;
  std::string out_path;
};

int DoAnalyze(const MultiOrderSystem& s, const AnalyzeOptions& opt,
              const std::string& out_path, std::ostream& out) {
  const AnalysisReport rep = Analyze(s, opt);
  out << ReportSummary(rep);
  if (!out_path.empty()) {
    WriteText(out_path, ReportToJson(rep));
    out << "wrote report to " << out_path << "\n";
  }
  return kExitOk;
}

template <typename Fn>
int Guard(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return ExitCodeFor(e);
  }
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Simulation and analysis of delayed fractional systems with "
               "coupled difference equations",
               "fracdelay"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* cmd_sim = app.add_subcommand("simulate", "Integrate a system config");
  cmd_sim->add_option("config", sim.config, "System config (JSON)")->required();
  cmd_sim->add_option("--step", sim.step, "Step size h")->capture_default_str();
  cmd_sim->add_option("--t-end", sim.t_end, "Final time")->capture_default_str();
  cmd_sim->add_option("--out", sim.out_path, "Trajectory CSV path")->required();
  cmd_sim->add_option("--oracle", sim.oracle, "Also run an oracle solver")
      ->check(CLI::IsMember({"picard"}));
  cmd_sim->add_option("--oracle-tol", sim.oracle_tol, "Oracle stopping tolerance")
      ->capture_default_str();

  AnalyzeArgs an;
  auto* cmd_an = app.add_subcommand("analyze", "Positivity, attractivity, bound");
  cmd_an->add_option("config", an.config, "System config (JSON)")->required();
  cmd_an->add_option("--F", an.F, "sup of f, one value per x component");
  cmd_an->add_option("--G", an.G, "sup of g, one value per y component");
  cmd_an->add_option("--regime", an.regime, "Forcing regime for forced systems")
      ->check(CLI::IsMember({"vanishing", "bounded"}));
  cmd_an->add_option("--out", an.out_path, "Report JSON path");

  std::string example_name;
  auto* cmd_ex = app.add_subcommand(
      "example", "Write a built-in scenario config, then simulate and analyze");
  cmd_ex->add_option("name", example_name, "Scenario name")
      ->required()
      ->check(CLI::IsMember({"ex1", "ex2", "ex3"}));

  double ml_alpha = 0.0;
  double ml_beta = 1.0;
  double ml_x = 0.0;
  auto* cmd_ml = app.add_subcommand("mlf", "Evaluate the Mittag-Leffler function");
  cmd_ml->add_option("--alpha", ml_alpha, "alpha")->required();
  cmd_ml->add_option("--beta", ml_beta, "beta")->capture_default_str();
  cmd_ml->add_option("--x", ml_x, "argument")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  if (cmd_sim->parsed()) {
    return Guard(err, [&] {
      return DoSimulate(LoadConfigFile(sim.config), sim, out, err);
    });
  }
  if (cmd_an->parsed()) {
    return Guard(err, [&] {
      AnalyzeOptions opt;
      if (!an.regime.empty()) opt.regime = ParseRegime(an.regime);
      opt.F = ToVector(an.F);
      opt.G = ToVector(an.G);
      return DoAnalyze(LoadConfigFile(an.config).system, opt, an.out_path, out);
    });
  }
  if (cmd_ex->parsed()) {
    return Guard(err, [&] {
      const Scenario* sc = FindScenario(example_name);
      const std::string base(sc->name);
      WriteText(base + ".json", sc->config_json);
      out << "wrote config to " << base << ".json\n";
      const SystemConfig cfg = ParseConfig(sc->config_json);
      SimulateArgs a;
      a.step = sc->step;
      a.t_end = sc->t_end;
      a.out_path = base + ".csv";
      DoSimulate(cfg, a, out, err);
      AnalyzeOptions opt;
      opt.F = sc->sup_f;
      opt.G = sc->sup_g;
      return DoAnalyze(cfg.system, opt, base + "_analysis.json", out);
    });
  }
  return Guard(err, [&] {
    out << Shortest(MittagLeffler(ml_alpha, ml_beta, ml_x)) << "\n";
    return kExitOk;
  });
}

}  // namespace fracdelay
