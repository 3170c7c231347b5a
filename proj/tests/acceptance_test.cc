// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Criteria are checked as stated, without loosening.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "fracdelay/analysis.h"
#include "fracdelay/config_io.h"
#include "fracdelay/scenarios.h"
#include "fracdelay/solver.h"
#include "fracdelay/special_functions.h"
#include "equivalence_triads.h"

namespace fracdelay {
namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

SystemConfig Load(const char* name) {
  return ParseConfig(FindScenario(name)->config_json);
}

RealVector Vec(std::initializer_list<double> v) {
  RealVector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

std::string Fmt(const char* fmt, double a) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), fmt, a);
  return buf;
}

double StateNorm(const Trajectory& tr, int k) {
  return std::max(tr.x.row(k).cwiseAbs().maxCoeff(),
                  tr.y.row(k).cwiseAbs().maxCoeff());
}

Outcome BoundReproduction() {
  AnalyzeOptions opt;
  opt.F = Vec({0.03, 0.1});
  opt.G = Vec({0.2, 0.6});
  const AnalysisReport rep = Analyze(Load("ex3").system, opt);
  if (!rep.bound) return {false, "no bound produced"};
  const RealVector x_err = rep.bound->x_star - Vec({4.0214, 3.6315});
  const RealVector y_err = rep.bound->y_star - Vec({6.1899, 4.8341});
  const double err =
      std::max(x_err.cwiseAbs().maxCoeff(), y_err.cwiseAbs().maxCoeff());
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "x* = (%.4f, %.4f), y* = (%.4f, %.4f), max deviation %.4f",
                rep.bound->x_star(0), rep.bound->x_star(1),
                rep.bound->y_star(0), rep.bound->y_star(1), err);
  return {err <= 5e-4, buf};
}

Outcome DerivedInitialData() {
  // Both reference values follow (I - D)^{-1} C psi(0); the forcing of the
  // second example does not enter.
  const SystemConfig ex1 = Load("ex1");
  const SystemConfig ex2 = Load("ex2");
  const RealVector p1 = DeriveInitialPhi(ex1.system, Vec({0.3, 0.2, 0.8}),
                                         RealVector::Zero(2));
  const RealVector p2 = DeriveInitialPhi(ex2.system, Vec({0.5, 0.1, 1.2}),
                                         RealVector::Zero(2));
  const double err = std::max((p1 - Vec({0.2195, 0.2377})).cwiseAbs().maxCoeff(),
                              (p2 - Vec({0.2740, 0.2831})).cwiseAbs().maxCoeff());
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "(%.4f, %.4f) and (%.4f, %.4f), max deviation %.1e", p1(0),
                p1(1), p2(0), p2(1), err);
  return {err <= 5e-4, buf};
}

SystemConfig ScalarHalf() {
  SystemConfig c;
  auto& s = c.system;
  s.order = Vec({0.5});
  s.A = RealMatrix::Constant(1, 1, -1.0);
  s.B = RealMatrix::Zero(1, 1);
  s.E = RealMatrix::Zero(1, 1);
  s.C = RealMatrix::Zero(1, 1);
  s.D = RealMatrix::Zero(1, 1);
  s.f = {TimeExpr()};
  s.g = {TimeExpr()};
  s.tau1 = TimeExpr::Constant(0.5);
  s.tau2 = TimeExpr::Constant(0.5);
  s.tau3 = TimeExpr::Constant(0.5);
  c.init = MakeDerivedInitialData(s, {TimeExpr::Constant(1.0)});
  return c;
}

Outcome ScalarAccuracy() {
  const double exact = std::exp(1.0) * std::erfc(1.0);
  const SystemConfig c = ScalarHalf();
  auto err_at = [&](double h) {
    const Trajectory tr = Simulate(c.system, c.init, Grid::FromStep(h, 1.0));
    return std::abs(tr.x(tr.size() - 1, 0) - exact);
  };
  const double rel = err_at(1e-3) / exact;
  const double ratio = err_at(4e-3) / err_at(2e-3);
  return {rel <= 1e-3 && ratio >= 1.8,
          Fmt("relative error %.2e", rel) + Fmt(", halving ratio %.3f", ratio)};
}

Outcome OracleAgreement() {
  const SystemConfig c = Load("ex1");
  const Grid grid = Grid::FromStep(0.005, 5.0);
  const Trajectory abm = Simulate(c.system, c.init, grid);
  const PicardResult pic = PicardSolve(c.system, c.init, grid);
  const double dist = SupDistance(abm, pic.trajectory);
  return {pic.converged && dist <= 1e-3,
          Fmt("sup difference %.4e", dist) +
              (pic.converged ? "" : " (picard not converged)")};
}

Outcome Positivity() {
  const double h = 0.01;
  std::string detail;
  bool pass = true;
  for (const char* name : {"ex1", "ex2"}) {
    const SystemConfig c = Load(name);
    const Trajectory tr = Simulate(c.system, c.init, Grid::FromStep(h, 50.0));
    const double init_norm =
        std::max(c.init.Psi(0.0).cwiseAbs().maxCoeff(),
                 c.init.Phi(0.0).cwiseAbs().maxCoeff());
    const double early_floor = -10.0 * std::pow(h, 0.2) * init_norm;
    double early_min = 1e300;
    double late_min = 1e300;
    for (int k = 0; k < tr.size(); ++k) {
      const double m = std::min(tr.x.row(k).minCoeff(), tr.y.row(k).minCoeff());
      (k <= 5 ? early_min : late_min) =
          std::min(k <= 5 ? early_min : late_min, m);
    }
    pass = pass && early_min >= early_floor && late_min >= -1e-6;
    detail += std::string(name) + Fmt(" min %.3e; ", std::min(early_min, late_min));
  }
  return {pass, detail};
}

Outcome AttractivityTrend() {
  const double h = 0.01;
  std::string detail;
  bool pass = true;
  for (const char* name : {"ex1", "ex2"}) {
    const SystemConfig c = Load(name);
    const Trajectory tr = Simulate(c.system, c.init, Grid::FromStep(h, 50.0));
    const double ratio = StateNorm(tr, 5000) / StateNorm(tr, 500);
    double worst_rise = 0.0;
    for (int k = 1000; k < 5000; ++k) {
      worst_rise = std::max(worst_rise, (tr.x.row(k + 1) - tr.x.row(k)).maxCoeff());
    }
    pass = pass && ratio <= 0.5 && worst_rise <= 1e-6;
    detail += std::string(name) + Fmt(" norm ratio %.3f", ratio) +
              Fmt(", worst step rise %.2e; ", worst_rise);
  }
  return {pass, detail};
}

Outcome BoundConsistency() {
  const SystemConfig c = Load("ex3");
  AnalyzeOptions opt;
  opt.F = Vec({0.03, 0.1});
  opt.G = Vec({0.2, 0.6});
  const AnalysisReport rep = Analyze(c.system, opt);
  if (!rep.bound) return {false, "no bound produced"};
  const Trajectory tr =
      Simulate(c.system, c.init, Grid::FromStep(0.02, 150.0));
  double excess = -1e300;
  for (int k = 1000; k < tr.size(); ++k) {
    excess = std::max(excess, (tr.x.row(k).transpose() - rep.bound->x_star).maxCoeff());
    excess = std::max(excess, (tr.y.row(k).transpose() - rep.bound->y_star).maxCoeff());
  }
  return {excess <= 0.05,
          Fmt("max of trajectory minus (x*, y*) for t >= 20: %.4f", excess)};
}

Outcome EquivalenceTriads() {
  const test::TriadStats mh = test::RunMetzlerHurwitzTriad(500, 20240501);
  const test::TriadStats ns = test::RunNonnegSchurTriad(500, 20240502);
  const bool pass = mh.samples == 500 && ns.samples == 500 &&
                    mh.disagreements == 0 && ns.disagreements == 0;
  return {pass, "Metzler/Hurwitz " + std::to_string(mh.disagreements) +
                    " disagreements, nonnegative/Schur " +
                    std::to_string(ns.disagreements) + " disagreements"};
}

Outcome MittagLefflerSuite() {
  double exp_err = 0.0;
  for (int k = 0; k <= 2000; ++k) {
    const double x = -10.0 + 0.01 * k;
    exp_err = std::max(exp_err,
                       std::abs(MittagLeffler(1.0, 1.0, x) / std::exp(x) - 1.0));
  }
  double zero_err = 0.0;
  for (double a : {0.1, 0.25, 0.5, 0.75, 1.0}) {
    for (double b : {0.5, 1.0, 1.3, 2.0, 3.7}) {
      zero_err = std::max(zero_err,
                          std::abs(MittagLeffler(a, b, 0.0) - 1.0 / Gamma(b)));
    }
  }
  const double h_fd = 1e-5;
  double deriv_ratio = 0.0;
  for (int ia = 2; ia <= 10; ++ia) {
    for (double c : {-5.0, -2.0, -1.0, -0.5, -0.1}) {
      for (int it = 0; it <= 99; ++it) {
        const double t = 0.1 + 0.1 * it;
        const auto p = MLDerivativeCheck(ia / 10.0, c, t, h_fd);
        deriv_ratio = std::max(deriv_ratio,
                               std::abs(p.analytic - p.finite_diff) / h_fd);
      }
    }
  }
  return {exp_err <= 1e-9 && zero_err <= 1e-12 && deriv_ratio <= 100.0,
          Fmt("exp rel err %.1e", exp_err) + Fmt(", E(0) err %.1e", zero_err) +
              Fmt(", derivative gap %.2e h_fd", deriv_ratio)};
}

Outcome Linearity() {
  const SystemConfig base = Load("ex1");
  const auto& s = base.system;
  const Grid grid = Grid::FromStep(0.01, 10.0);
  auto run = [&](double a, double b, double c) {
    return Simulate(s,
                    MakeDerivedInitialData(s, {TimeExpr::Constant(a),
                                               TimeExpr::Constant(b),
                                               TimeExpr::Constant(c)}),
                    grid);
  };
  // psi = psi_plus + psi_minus for a sign-mixed psi.
  const Trajectory whole = run(0.3, -0.2, 0.8);
  const Trajectory plus = run(0.3, 0.0, 0.8);
  const Trajectory minus = run(0.0, -0.2, 0.0);
  const double err = std::max(
      (whole.x - plus.x - minus.x).cwiseAbs().maxCoeff(),
      (whole.y - plus.y - minus.y).cwiseAbs().maxCoeff());
  return {err <= 1e-9, Fmt("max deviation %.2e", err)};
}

struct Criterion {
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace fracdelay

int main() {
  using namespace fracdelay;
  const std::vector<Criterion> criteria = {
      {"asymptotic bound reproduction", 1.0, BoundReproduction},
      {"derived initial data", 1.0, DerivedInitialData},
      {"scalar solver accuracy", 10.0, ScalarAccuracy},
      {"oracle agreement", 60.0, OracleAgreement},
      {"positivity preservation", 120.0, Positivity},
      {"attractivity trend", 120.0, AttractivityTrend},
      {"bound consistency", 120.0, BoundConsistency},
      {"matrix equivalence suites", 30.0, EquivalenceTriads},
      {"Mittag-Leffler suite", 10.0, MittagLefflerSuite},
      {"linearity and decomposition", 60.0, Linearity},
  };
  int failures = 0;
  int index = 0;
  for (const auto& c : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    if (secs > c.budget_s) {
      o.pass = false;
      o.detail += Fmt(" [over time budget %.0f s]", c.budget_s);
    }
    if (!o.pass) ++failures;
    std::printf("%s criterion %d (%s): %s (%.2f s)\n", o.pass ? "PASS" : "FAIL",
                index, c.name, o.detail.c_str(), secs);
  }
  std::printf("%d of %zu criteria passed\n",
              static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
