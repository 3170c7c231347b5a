#include "fracdelay/solver.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "fracdelay/errors.h"
#include "fracdelay/history_buffer.h"
#include "fracdelay/special_functions.h"

namespace fracdelay {
namespace {

std::string Num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// (m+1)^p - m^p without cancellation for large m.
double PowDiff(double m, double p) {
  if (m == 0.0) return 1.0;
  return std::pow(m, p) * std::expm1(p * std::log1p(1.0 / m));
}

void RequireValid(const MultiOrderSystem& s, const InitialData& init,
                  const Grid& grid) {
  const ValidationReport rep = ValidateSystem(s, init, grid.t_end());
  if (rep.ok()) return;
  std::string msg = "system fails validation:";
  for (const auto& f : rep.failures) msg += "\n  " + f;
  throw ValidationError(msg);
}

// F(t) = A x + B x(t - tau1(t)) + E y(t - tau2(t)) + f(t), with the delayed
// values read from `hist`.
RealVector Rhs(const MultiOrderSystem& s, const HistoryBuffer& hist, double t,
               const RealVector& x) {
  RealVector out = s.A * x + s.EvalF(t);
  out.noalias() += s.B * hist.LookupX(t - s.tau1.Eval(t));
  out.noalias() += s.E * hist.LookupY(t - s.tau2.Eval(t));
  return out;
}

// y at t = 0 from the difference equation; a zero tau3(0) makes it implicit.
RealVector InitialY(const MultiOrderSystem& s, const InitialData& init,
                    const RealVector& x0) {
  const double lag = -s.tau3.Eval(0.0);
  const RealVector rhs = s.C * x0 + s.EvalG(0.0);
  if (lag < 0.0) return rhs + s.D * init.Phi(lag);
  if (lag > 0.0) {
    throw RangeError("tau3 is negative at t = 0");
  }
  return SolveChecked(RealMatrix::Identity(s.n(), s.n()) - s.D, rhs);
}

// y at node k+1 given x there and stored nodes 0..k. When t - tau3(t)
// falls inside the new step, linear interpolation couples y_{k+1} to
// itself with weight theta and we solve (I - theta D) y = ...
RealVector StepY(const MultiOrderSystem& s, const HistoryBuffer& hist,
                 double h, int k, const RealVector& x_new) {
  const double t_prev = h * k;
  const double t_new = h * (k + 1);
  const double lag = t_new - s.tau3.Eval(t_new);
  const RealVector base = s.C * x_new + s.EvalG(t_new);
  if (lag <= t_prev + 1e-9 * h) {
    return base + s.D * hist.LookupY(std::min(lag, t_prev));
  }
  double theta = (lag - t_prev) / h;
  if (theta > 1.0 + 1e-9) {
    throw RangeError("tau3 is negative at t = " + Num(t_new));
  }
  theta = std::min(theta, 1.0);
  const RealMatrix lhs =
      RealMatrix::Identity(s.n(), s.n()) - theta * s.D;
  const RealVector rhs = base + (1.0 - theta) * (s.D * hist.NodeY(k));
  try {
    return SolveChecked(lhs, rhs);
  } catch (const SingularMatrixError& e) {
    throw std::logic_error(std::string("I - theta D singular: ") + e.what());
  }
}

Trajectory Collect(const HistoryBuffer& hist, const Grid& grid,
                   SchemeMetadata scheme) {
  Trajectory traj;
  traj.grid = grid;
  traj.scheme = std::move(scheme);
  traj.x.resize(hist.size(), hist.d());
  traj.y.resize(hist.size(), hist.n());
  for (int k = 0; k < hist.size(); ++k) {
    traj.x.row(k) = hist.NodeX(k).transpose();
    traj.y.row(k) = hist.NodeY(k).transpose();
  }
  return traj;
}

std::vector<detail::AbmWeights> WeightsFor(const MultiOrderSystem& s,
                                           const Grid& grid) {
  std::vector<detail::AbmWeights> w;
  for (int i = 0; i < s.d(); ++i) {
    // Components sharing an order share a table.
    int same = -1;
    for (int j = 0; j < i; ++j) {
      if (s.order(j) == s.order(i)) same = j;
    }
    w.push_back(same >= 0 ? w[same]
                          : detail::MakeAbmWeights(s.order(i), grid.h,
                                                   grid.n_steps));
  }
  return w;
}

}  // namespace

Grid Grid::FromStep(double h, double t_end) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw DomainError("step must be positive and finite");
  }
  if (!(t_end > 0.0) || !std::isfinite(t_end)) {
    throw DomainError("t_end must be positive and finite");
  }
  const double steps = std::round(t_end / h);
  if (steps < 1.0 || steps > 1e8 ||
      std::abs(steps * h - t_end) > 1e-9 * t_end) {
    throw DomainError("t_end = " + Num(t_end) +
                      " is not a whole number of steps h = " + Num(h));
  }
  Grid g;
  g.h = h;
  g.n_steps = static_cast<int>(steps);
  return g;
}

namespace detail {

AbmWeights MakeAbmWeights(double alpha, double h, int n_steps) {
  AbmWeights w;
  w.predictor_scale = std::pow(h, alpha) / Gamma(alpha + 1.0);
  w.corrector_scale = std::pow(h, alpha) / Gamma(alpha + 2.0);
  const std::size_t size = static_cast<std::size_t>(n_steps) + 1;
  w.b.resize(size);
  w.c.resize(size);
  w.a0.resize(size);
  for (std::size_t k = 0; k < size; ++k) {
    const double m = static_cast<double>(k);
    w.b[k] = PowDiff(m, alpha);
    w.c[k] = PowDiff(m + 1.0, alpha + 1.0) - PowDiff(m, alpha + 1.0);
    // n^(a+1) - (n-a)(n+1)^a rearranged as a (n+1)^a - n ((n+1)^a - n^a).
    w.a0[k] = alpha * std::pow(m + 1.0, alpha) - m * PowDiff(m, alpha);
  }
  return w;
}

}  // namespace detail

Trajectory Simulate(const MultiOrderSystem& s, const InitialData& init,
                    const Grid& grid) {
  RequireValid(s, init, grid);
  const int d = s.d();
  const int big_n = grid.n_steps;
  const double h = grid.h;
  const auto weights = WeightsFor(s, grid);

  HistoryBuffer hist(h, s.r, d, s.n(), init, big_n + 1);
  const RealVector x0 = init.Psi(0.0);
  hist.Append(x0, InitialY(s, init, x0));

  // F at every node, column-major per component for the convolutions.
  RealMatrix f_hist(big_n + 1, d);
  f_hist.row(0) = Rhs(s, hist, 0.0, x0).transpose();

  RealVector x_pred(d);
  RealVector x_new(d);
  RealVector corrector_hist(d);
  for (int k = 0; k < big_n; ++k) {
    const double t_new = h * (k + 1);
    for (int i = 0; i < d; ++i) {
      const auto& w = weights[i];
      const double* fi = f_hist.col(i).data();
      double pred = 0.0;
      for (int j = 0; j <= k; ++j) pred += w.b[k - j] * fi[j];
      double corr = w.a0[k] * fi[0];
      for (int j = 1; j <= k; ++j) corr += w.c[k - j] * fi[j];
      x_pred(i) = x0(i) + w.predictor_scale * pred;
      corrector_hist(i) = corr;
    }
    // Delayed lookups that reach into (t_k, t_{k+1}] see the predictor.
    hist.SetTentative(x_pred, StepY(s, hist, h, k, x_pred));
    const RealVector f_pred = Rhs(s, hist, t_new, x_pred);
    hist.ClearTentative();
    for (int i = 0; i < d; ++i) {
      x_new(i) = x0(i) +
                 weights[i].corrector_scale * (corrector_hist(i) + f_pred(i));
    }
    hist.Append(x_new, StepY(s, hist, h, k, x_new));
    f_hist.row(k + 1) = Rhs(s, hist, t_new, x_new).transpose();
  }
  return Collect(hist, grid,
                 {"fractional Adams-Bashforth-Moulton PECE", 1, 1});
}

PicardResult PicardSolve(const MultiOrderSystem& s, const InitialData& init,
                         const Grid& grid, const PicardOptions& options) {
  if (options.max_iters < 1 || !(options.tol > 0.0)) {
    throw DomainError("PicardSolve: max_iters >= 1 and tol > 0 required");
  }
  RequireValid(s, init, grid);
  const int d = s.d();
  const int big_n = grid.n_steps;
  const double h = grid.h;
  const auto weights = WeightsFor(s, grid);

  int window = options.window;
  if (window <= 0) {
    // Largest W with max_i L (W h)^a_i / Gamma(a_i + 1) <= 1/2.
    RealVector rows = (s.A.cwiseAbs() + s.B.cwiseAbs()).rowwise().sum();
    rows += s.E.cwiseAbs().rowwise().sum();
    const double lip = rows.maxCoeff();
    double span = std::numeric_limits<double>::infinity();
    if (lip > 0.0) {
      for (int i = 0; i < d; ++i) {
        const double a = s.order(i);
        span = std::min(span,
                        std::pow(0.5 * Gamma(a + 1.0) / lip, 1.0 / a));
      }
    }
    const double steps = std::floor(span / h);
    window = steps >= big_n + 1 ? big_n + 1
                                : std::max(1, static_cast<int>(steps));
  }

  PicardResult result;
  result.window_steps = window;
  HistoryBuffer hist(h, s.r, d, s.n(), init, big_n + 1);
  RealMatrix f_frozen(big_n + 1, d);
  const RealVector x0 = init.Psi(0.0);
  RealVector x_last = x0;
  RealVector y_last = init.Phi(0.0);

  // Trapezoid weight of node j in the integral up to node k >= 1.
  auto weight = [&](int i, int k, int j) {
    if (j == k) return 1.0;
    if (j == 0) return weights[i].a0[k - 1];
    return weights[i].c[k - 1 - j];
  };

  int frozen = 0;
  while (frozen <= big_n) {
    const int w0 = frozen;
    const int len = std::min(window, big_n + 1 - w0);
    RealMatrix hist_sum = RealMatrix::Zero(len, d);
    for (int q = 0; q < len; ++q) {
      const int k = w0 + q;
      if (k == 0) continue;
      for (int i = 0; i < d; ++i) {
        const double* fi = f_frozen.col(i).data();
        double acc = 0.0;
        for (int j = 0; j < std::min(w0, k); ++j) acc += weight(i, k, j) * fi[j];
        hist_sum(q, i) = acc;
      }
    }

    std::vector<RealVector> xs(len, x_last);
    std::vector<RealVector> ys(len, y_last);
    auto install = [&] {
      hist.Truncate(w0);
      for (int q = 0; q < len; ++q) hist.Append(xs[q], ys[q]);
    };
    install();

    RealMatrix f_window(len, d);
    int iters = 0;
    double increment = 0.0;
    for (;;) {
      for (int q = 0; q < len; ++q) {
        f_window.row(q) = Rhs(s, hist, h * (w0 + q), xs[q]).transpose();
      }
      increment = 0.0;
      std::vector<RealVector> xs_new(len);
      std::vector<RealVector> ys_new(len);
      for (int q = 0; q < len; ++q) {
        const int k = w0 + q;
        const double t = h * k;
        if (k == 0) {
          xs_new[q] = x0;
        } else {
          xs_new[q].resize(d);
          for (int i = 0; i < d; ++i) {
            double acc = hist_sum(q, i);
            for (int p = 0; p <= q; ++p) {
              acc += weight(i, k, w0 + p) * f_window(p, i);
            }
            xs_new[q](i) = x0(i) + weights[i].corrector_scale * acc;
          }
        }
        ys_new[q] = s.C * xs[q] + s.D * hist.LookupY(t - s.tau3.Eval(t)) +
                    s.EvalG(t);
        increment = std::max({increment,
                              (xs_new[q] - xs[q]).cwiseAbs().maxCoeff(),
                              (ys_new[q] - ys[q]).cwiseAbs().maxCoeff()});
      }
      xs.swap(xs_new);
      ys.swap(ys_new);
      install();
      ++iters;
      if (increment <= options.tol) break;
      if (iters >= options.max_iters) {
        result.converged = false;
        break;
      }
    }
    result.total_iterations += iters;
    result.max_window_iterations = std::max(result.max_window_iterations, iters);
    result.worst_increment = std::max(result.worst_increment, increment);

    for (int q = 0; q < len; ++q) {
      f_frozen.row(w0 + q) = Rhs(s, hist, h * (w0 + q), xs[q]).transpose();
    }
    x_last = xs.back();
    y_last = ys.back();
    frozen = w0 + len;
  }
  result.trajectory =
      Collect(hist, grid,
              {"windowed Picard iteration, product trapezoid quadrature",
               result.max_window_iterations, 1});
  return result;
}

double ScalarMlSolution(double alpha, double lam, double x0, double t) {
  if (!(t >= 0.0) || !std::isfinite(t) || !std::isfinite(lam) ||
      !std::isfinite(x0)) {
    throw DomainError("ScalarMlSolution: need finite lam, x0 and t >= 0");
  }
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw DomainError("ScalarMlSolution: alpha must lie in (0, 1]");
  }
  if (x0 == 0.0) return 0.0;
  return x0 * MittagLeffler(alpha, 1.0, lam * std::pow(t, alpha));
}

double SupDistance(const Trajectory& a, const Trajectory& b) {
  if (a.x.rows() != b.x.rows() || a.x.cols() != b.x.cols() ||
      a.y.rows() != b.y.rows() || a.y.cols() != b.y.cols()) {
    throw DimensionError("SupDistance: trajectories have different shapes");
  }
  double out = 0.0;
  if (a.x.size() > 0) out = std::max(out, (a.x - b.x).cwiseAbs().maxCoeff());
  if (a.y.size() > 0) out = std::max(out, (a.y - b.y).cwiseAbs().maxCoeff());
  return out;
}

}  // namespace fracdelay
