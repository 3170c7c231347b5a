#include "fracdelay/system_model.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <utility>

#include "fracdelay/errors.h"

namespace fracdelay {
namespace {

void RequireShape(const RealMatrix& m, Eigen::Index rows, Eigen::Index cols,
                  const char* name) {
  if (m.rows() != rows || m.cols() != cols) {
    throw DimensionError(std::string(name) + " must be " +
                         std::to_string(rows) + "x" + std::to_string(cols) +
                         ", got " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
  }
  if (!m.allFinite()) {
    throw DomainError(std::string(name) + " has non-finite entries");
  }
}

void RequireCount(std::size_t count, int expected, const char* name) {
  if (static_cast<int>(count) != expected) {
    throw DimensionError(std::string(name) + " must have " +
                         std::to_string(expected) + " entries, got " +
                         std::to_string(count));
  }
}

RealVector EvalAll(const std::vector<TimeExpr>& exprs, double t) {
  RealVector v(static_cast<Eigen::Index>(exprs.size()));
  for (std::size_t i = 0; i < exprs.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = exprs[i].Eval(t);
  }
  return v;
}

std::string Num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

void MultiOrderSystem::CheckWellFormed() const {
  if (order.size() == 0) throw DimensionError("order must be non-empty");
  for (Eigen::Index i = 0; i < order.size(); ++i) {
    if (!(order(i) > 0.0 && order(i) <= 1.0)) {
      throw DomainError("order[" + std::to_string(i) +
                        "] must lie in (0, 1], got " + Num(order(i)));
    }
  }
  const int dd = d();
  const int nn = static_cast<int>(D.rows());
  if (nn == 0) throw DimensionError("D must be non-empty");
  RequireShape(A, dd, dd, "A");
  RequireShape(B, dd, dd, "B");
  RequireShape(E, dd, nn, "E");
  RequireShape(C, nn, dd, "C");
  RequireShape(D, nn, nn, "D");
  RequireCount(f.size(), dd, "f");
  RequireCount(g.size(), nn, "g");
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw DomainError("r must be positive and finite");
  }
}

RealVector MultiOrderSystem::EvalF(double t) const { return EvalAll(f, t); }
RealVector MultiOrderSystem::EvalG(double t) const { return EvalAll(g, t); }

bool MultiOrderSystem::IsHomogeneous() const {
  auto zero = [](const TimeExpr& e) { return e.IsZeroLiteral(); };
  return std::all_of(f.begin(), f.end(), zero) &&
         std::all_of(g.begin(), g.end(), zero);
}

RealVector InitialData::Psi(double s) const { return EvalAll(psi, s); }
RealVector InitialData::Phi(double s) const { return EvalAll(phi, s); }

RealVector DeriveInitialPhi(const MultiOrderSystem& s, const RealVector& psi0,
                            const RealVector& g0) {
  if (psi0.size() != s.C.cols() || g0.size() != s.D.rows()) {
    throw DimensionError("DeriveInitialPhi: psi0 or g0 has the wrong length");
  }
  const RealMatrix resolvent =
      RealMatrix::Identity(s.D.rows(), s.D.cols()) - s.D;
  return SolveChecked(resolvent, s.C * psi0 + g0);
}

InitialData MakeDerivedInitialData(const MultiOrderSystem& s,
                                   std::vector<TimeExpr> psi) {
  InitialData init;
  init.psi = std::move(psi);
  init.phi_mode = PhiMode::kDerived;
  RequireCount(init.psi.size(), s.d(), "psi");
  const RealVector phi0 = DeriveInitialPhi(s, init.Psi(0.0), s.EvalG(0.0));
  for (Eigen::Index i = 0; i < phi0.size(); ++i) {
    init.phi.push_back(TimeExpr::Constant(phi0(i)));
  }
  return init;
}

ValidationReport ValidateSystem(const MultiOrderSystem& s,
                                const InitialData& init, double horizon) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw DomainError("ValidateSystem: horizon must be positive and finite");
  }
  s.CheckWellFormed();
  RequireCount(init.psi.size(), s.d(), "psi");
  RequireCount(init.phi.size(), s.n(), "phi");

  ValidationReport rep;
  rep.c_norm = InfNorm(s.C);
  rep.d_norm = InfNorm(s.D);
  rep.c1 = RowSumLtOne(s.C);
  rep.d1 = RowSumLtOne(s.D);
  if (!rep.c1) {
    rep.failures.push_back("condition (c1) fails: ||C||_inf = " +
                           Num(rep.c_norm) + " >= 1");
  }
  if (!rep.d1) {
    rep.failures.push_back("condition (d1) fails: ||D||_inf = " +
                           Num(rep.d_norm) +
                           " >= 1; existence and uniqueness not guaranteed");
  }

  try {
    const double tau3_0 = s.tau3.Eval(0.0);
    const RealVector lhs = s.C * init.Psi(0.0) + s.D * init.Phi(-tau3_0) +
                           s.EvalG(0.0) - init.Phi(0.0);
    rep.k_residual = lhs.cwiseAbs().maxCoeff();
    rep.k_holds = rep.k_residual <= kCompatibilityTol;
    if (!rep.k_holds) {
      rep.failures.push_back("compatibility at t = 0 fails: residual " +
                             Num(rep.k_residual));
    }
  } catch (const EvalError& e) {
    rep.k_residual = std::numeric_limits<double>::infinity();
    rep.failures.push_back(std::string("compatibility at t = 0: ") + e.what());
  }

  const TimeExpr* taus[3] = {&s.tau1, &s.tau2, &s.tau3};
  const int samples = kMinDelaySamples;
  rep.delay_samples = samples + 1;
  rep.t1_holds = true;
  rep.delays_nonnegative = true;
  rep.t2_holds = true;
  rep.t4_holds = true;
  rep.t1_min_margin = std::numeric_limits<double>::infinity();
  const int tenth = samples / 10;
  for (int k = 0; k < 3; ++k) {
    const std::string name = "tau" + std::to_string(k + 1);
    double head_min = std::numeric_limits<double>::infinity();
    double tail_min = std::numeric_limits<double>::infinity();
    try {
      if (!(taus[k]->Eval(0.0) > 0.0)) rep.t2_holds = false;
      for (int j = 0; j <= samples; ++j) {
        const double t = horizon * j / samples;
        const double tau = taus[k]->Eval(t);
        const double lag = t - tau;
        if (tau < 0.0 && rep.delays_nonnegative) {
          rep.delays_nonnegative = false;
          rep.failures.push_back(name + " is negative at t = " + Num(t));
        }
        rep.t1_min_margin = std::min(rep.t1_min_margin, lag + s.r);
        if (lag < -s.r && rep.t1_holds) {
          rep.t1_holds = false;
          rep.failures.push_back("t - " + name + "(t) < -r at t = " + Num(t) +
                                 " (sampled)");
        }
        if (j <= tenth) head_min = std::min(head_min, lag);
        if (j >= samples - tenth) tail_min = std::min(tail_min, lag);
      }
      if (!(tail_min > head_min)) rep.t4_holds = false;
    } catch (const EvalError& e) {
      rep.t1_holds = false;
      rep.t4_holds = false;
      rep.failures.push_back(name + ": " + e.what());
    }
  }
  return rep;
}

}  // namespace fracdelay
