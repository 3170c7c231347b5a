#pragma once

/** \file special_functions.h
 * \brief Gamma and two-parameter Mittag-Leffler functions on the real line.
 *
 * All functions are pure and thread-safe. */

namespace fracdelay {

/// Gamma function for x > 0 via a Lanczos approximation (g = 7, nine
/// coefficients). Relative error below 1e-13 on (0, 50].
/// Throws DomainError for x <= 0 or non-finite x.
double Gamma(double x);

/// log(Gamma(x)) for x > 0.
double LogGamma(double x);

/// 1/Gamma(x) for any finite x; zero at the poles 0, -1, -2, ...
double ReciprocalGamma(double x);

/// Arguments of E_{alpha,beta}(x). Valid when alpha is in (0, 1] and
/// beta > 0.
struct MLQuery {
  double alpha = 1.0;
  double beta = 1.0;
  double x = 0.0;
};

/** Two-parameter Mittag-Leffler function
 *
 *   E_{alpha,beta}(x) = sum_k x^k / Gamma(alpha k + beta).
 *
 * Accurate to 1e-9 relative on x in [-50, 5] (where representable).
 * Evaluation regimes:
 *   - x >= -1: the defining series (log-space terms, cap 10000 terms);
 *   - x < -1, alpha < 1: the algebraic asymptotic expansion when its
 *     smallest term certifies the tolerance, otherwise the real integral
 *     representation, valid for beta < 1 + alpha, reached through the
 *     recurrence E_{a,b}(x) = (E_{a,b-a}(x) - 1/Gamma(b-a)) / x;
 *   - alpha = 1: closed forms and the Kummer-transformed series.
 *
 * Throws DomainError outside alpha in (0,1], beta > 0, and AccuracyError
 * when no regime reaches the tolerance (e.g. overflow for large positive
 * x with small alpha). */
double MittagLeffler(const MLQuery& q);
double MittagLeffler(double alpha, double beta, double x);

struct MLDerivativePair {
  double analytic = 0.0;
  double finite_diff = 0.0;
};

/// d/dt E_alpha(c t^alpha) two ways: the closed form
/// c t^(alpha-1) E_{alpha,alpha}(c t^alpha), and a central difference with
/// step h_fd. Requires t > h_fd > 0.
MLDerivativePair MLDerivativeCheck(double alpha, double c, double t,
                                   double h_fd);

namespace detail {

// Individual regimes, exposed for cross-regime agreement tests. Each throws
// AccuracyError when it cannot certify 1e-9 relative accuracy.
double MittagLefflerSeries(double alpha, double beta, double x);
double MittagLefflerAsymptotic(double alpha, double beta, double x);
double MittagLefflerIntegral(double alpha, double beta, double x);

}  // namespace detail
}  // namespace fracdelay
