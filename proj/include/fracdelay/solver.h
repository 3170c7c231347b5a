#pragma once

/** \file solver.h
 * \brief Time integration of the delayed coupled system.
 *
 * The x-equation is integrated in its Volterra form
 *
 *   x_i(t) = psi_i(0) + 1/Gamma(alpha_i) int_0^t (t-s)^(alpha_i-1) F_i(s) ds,
 *   F(s)   = A x(s) + B x(s - tau1(s)) + E y(s - tau2(s)) + f(s),
 *
 * by the fractional Adams-Bashforth-Moulton scheme (product rectangle
 * predictor, one product trapezoid corrector, weights per component order).
 * y comes from the difference equation at each node. Memory is never
 * truncated: O(d N^2) time, O((d + n) N) storage. */

#include <string>
#include <vector>

#include "fracdelay/matrix_analysis.h"
#include "fracdelay/system_model.h"

namespace fracdelay {

struct Grid {
  double h = 0.01;
  int n_steps = 1;

  double t_end() const { return h * n_steps; }
  double t(int k) const { return h * k; }

  /// n_steps = round(t_end / h). Throws DomainError unless h > 0, t_end > 0
  /// and t_end is a whole number of steps (to 1e-9 relative).
  static Grid FromStep(double h, double t_end);
};

struct SchemeMetadata {
  std::string method;
  int corrector_iterations = 1;
  int interpolation_order = 1;
};

struct Trajectory {
  Grid grid;
  RealMatrix x;  // (n_steps + 1) x d, row k at t = k h
  RealMatrix y;  // (n_steps + 1) x n
  SchemeMetadata scheme;

  int size() const { return static_cast<int>(x.rows()); }
  double t(int k) const { return grid.t(k); }
};

/// Throws ValidationError unless (c1), (d1), compatibility and the sampled
/// delay conditions hold on [0, t_end]. Expression and history errors
/// propagate (EvalError, RangeError).
Trajectory Simulate(const MultiOrderSystem& s, const InitialData& init,
                    const Grid& grid);

struct PicardOptions {
  int max_iters = 1000;
  double tol = 1e-10;
  /// Steps per window; 0 picks the largest window on which the explicit
  /// Lipschitz bound of the integral operator is at most 1/2 (minimum 1).
  int window = 0;
};

struct PicardResult {
  Trajectory trajectory;
  bool converged = true;
  int window_steps = 1;
  int total_iterations = 0;
  int max_window_iterations = 0;
  /// Largest final sup-norm increment over all windows.
  double worst_increment = 0.0;
};

/** Fixed-point iteration of the solution operator
 *
 *   x_i(t) <- psi_i(0) + I^alpha_i [A x + B x(.-tau1) + E y(.-tau2) + f](t),
 *   y(t)   <- C x(t) + D y(t - tau3(t)) + g(t),
 *
 * with product-trapezoid quadrature, marched window by window: nodes
 * before a window are frozen and each window iterates from the constant
 * extension of the last frozen values until the sup-norm increment is at
 * most `tol`. Windows that hit `max_iters` clear `converged` but the run
 * continues. */
PicardResult PicardSolve(const MultiOrderSystem& s, const InitialData& init,
                         const Grid& grid, const PicardOptions& options = {});

/// x0 * E_alpha(lam t^alpha), the solution of D^alpha x = lam x, x(0) = x0.
double ScalarMlSolution(double alpha, double lam, double x0, double t);

/// Max over nodes and components of |a - b|; grids must match.
double SupDistance(const Trajectory& a, const Trajectory& b);

namespace detail {

/// Product-integration weights for one order alpha on n_steps steps.
struct AbmWeights {
  double predictor_scale = 0.0;  // h^a / Gamma(a + 1)
  double corrector_scale = 0.0;  // h^a / Gamma(a + 2)
  std::vector<double> b;         // (k+1)^a - k^a
  std::vector<double> c;         // (m+2)^(a+1) + m^(a+1) - 2 (m+1)^(a+1)
  std::vector<double> a0;        // n^(a+1) - (n - a)(n+1)^a
};

AbmWeights MakeAbmWeights(double alpha, double h, int n_steps);

}  // namespace detail
}  // namespace fracdelay
