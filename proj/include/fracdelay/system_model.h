#pragma once

/** \file system_model.h
 * \brief The delayed coupled system
 *
 *   D^alpha x(t) = A x(t) + B x(t - tau1(t)) + E y(t - tau2(t)) + f(t),
 *   y(t)         = C x(t) + D y(t - tau3(t)) + g(t),
 *
 * with Caputo derivatives of per-component order alpha_i in (0, 1], and
 * initial functions x = psi, y = phi on [-r, 0]. */

#include <string>
#include <vector>

#include "fracdelay/matrix_analysis.h"
#include "fracdelay/time_expr.h"

namespace fracdelay {

struct MultiOrderSystem {
  RealVector order;  // alpha, length d
  RealMatrix A;      // d x d
  RealMatrix B;      // d x d
  RealMatrix E;      // d x n
  RealMatrix C;      // n x d
  RealMatrix D;      // n x n
  std::vector<TimeExpr> f;  // d entries
  std::vector<TimeExpr> g;  // n entries
  TimeExpr tau1;
  TimeExpr tau2;
  TimeExpr tau3;
  double r = 1.0;

  int d() const { return static_cast<int>(order.size()); }
  int n() const { return static_cast<int>(D.rows()); }

  /// Throws DimensionError on inconsistent shapes and DomainError on an
  /// order outside (0, 1], non-finite entries, or r <= 0.
  void CheckWellFormed() const;

  RealVector EvalF(double t) const;
  RealVector EvalG(double t) const;
  /// All forcing expressions are the literal 0.
  bool IsHomogeneous() const;
};

enum class PhiMode { kExplicit, kDerived };

struct InitialData {
  std::vector<TimeExpr> psi;  // d entries, x on [-r, 0]
  std::vector<TimeExpr> phi;  // n entries, y on [-r, 0]
  PhiMode phi_mode = PhiMode::kExplicit;

  RealVector Psi(double s) const;
  RealVector Phi(double s) const;
};

/// (I - D)^{-1} (C psi0 + g0). Throws SingularMatrixError if I - D is
/// singular and DimensionError on length mismatch.
RealVector DeriveInitialPhi(const MultiOrderSystem& s, const RealVector& psi0,
                            const RealVector& g0);

/// Initial data whose phi is the constant DeriveInitialPhi(s, psi(0), g(0)).
InitialData MakeDerivedInitialData(const MultiOrderSystem& s,
                                   std::vector<TimeExpr> psi);

/// Minimum number of sample points used for the delay conditions.
inline constexpr int kMinDelaySamples = 10000;
/// Tolerance of the compatibility condition at t = 0.
inline constexpr double kCompatibilityTol = 1e-9;

struct ValidationReport {
  // Row-sum contraction conditions on C and D.
  double c_norm = 0.0;
  double d_norm = 0.0;
  bool c1 = false;
  bool d1 = false;
  // Compatibility at t = 0: ||C psi(0) + D phi(-tau3(0)) + g(0) - phi(0)||.
  double k_residual = 0.0;
  bool k_holds = false;
  // t - tau_k(t) >= -r on the sample grid ("sampled").
  int delay_samples = 0;
  double t1_min_margin = 0.0;  // min of t - tau_k(t) + r
  bool t1_holds = false;
  bool delays_nonnegative = false;
  // tau_k(0) > 0; recorded, never required.
  bool t2_holds = false;
  // t - tau_k(t) -> infinity, judged by comparing the first and last tenth
  // of the sample grid ("heuristic").
  bool t4_holds = false;
  std::vector<std::string> failures;

  /// The conditions required before simulating: (c1), (d1), compatibility,
  /// the sampled delay range condition and nonnegative delays.
  bool ok() const {
    return c1 && d1 && k_holds && t1_holds && delays_nonnegative;
  }
};

/// Checks every hypothesis on [0, horizon]. Never throws for a failed
/// condition (those are recorded in the report); shape errors throw.
ValidationReport ValidateSystem(const MultiOrderSystem& s,
                                const InitialData& init, double horizon);

}  // namespace fracdelay
