#include "fracdelay/special_functions.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "fracdelay/errors.h"

namespace fracdelay {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = 2.220446049250313e-16;

// Target accuracy of every Mittag-Leffler regime.
constexpr double kMlRelTol = 1e-9;
constexpr int kMaxSeriesTerms = 10000;

// Lanczos approximation, g = 7, n = 9 (Godfrey's coefficient set).
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoef = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

// sin(pi*y) with exact argument reduction, so that integer y gives 0.
double SinPi(double y) {
  double r = std::fmod(y, 2.0);  // exact
  if (r < 0) r += 2.0;
  if (r == 0.0 || r == 1.0) return 0.0;
  if (r == 0.5) return 1.0;
  if (r == 1.5) return -1.0;
  // Fold into [0, 1/2] with exact subtractions so that the result keeps
  // full relative accuracy next to the zeros.
  double sign = 1.0;
  if (r > 1.0) {
    r -= 1.0;
    sign = -1.0;
  }
  if (r > 0.5) r = 1.0 - r;
  return sign * std::sin(kPi * r);
}

double LanczosSum(double xm1) {
  double a = kLanczosCoef[0];
  for (std::size_t i = 1; i < kLanczosCoef.size(); ++i) {
    a += kLanczosCoef[i] / (xm1 + static_cast<double>(i));
  }
  return a;
}

void RequireMlDomain(double alpha, double beta, double x) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw DomainError("Mittag-Leffler: alpha must lie in (0, 1], got " +
                      std::to_string(alpha));
  }
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw DomainError("Mittag-Leffler: beta must be > 0, got " +
                      std::to_string(beta));
  }
  if (!std::isfinite(x)) {
    throw DomainError("Mittag-Leffler: argument must be finite");
  }
}

// |x|^k / Gamma(alpha k + beta), switching to log space once either factor
// would leave double range.
double SeriesTermMagnitude(double abs_x, int k, double alpha, double beta) {
  const double arg = alpha * k + beta;
  const double log_pow = k * std::log(abs_x);
  if (arg < 150.0 && log_pow < 650.0) {
    return std::pow(abs_x, k) * ReciprocalGamma(arg);
  }
  return std::exp(log_pow - LogGamma(arg));
}

double ExpOneBetaKummer(double beta, double x) {
  // E_{1,b}(x) = e^x / Gamma(b) * sum_k (b-1)/(b-1+k) |x|^k / k!, b > 1,
  // x < 0. All terms are positive.
  const double ax = -x;
  const double a = beta - 1.0;
  double p = 1.0;
  double sum = 1.0;
  for (int k = 1; k < kMaxSeriesTerms; ++k) {
    p *= ax / k;
    const double term = a / (a + k) * p;
    sum += term;
    if (k > ax && term < 1e-17 * sum) {
      const double log_val = x + std::log(sum);
      return std::exp(log_val) * ReciprocalGamma(beta);
    }
    if (!std::isfinite(sum)) break;
  }
  throw AccuracyError("Mittag-Leffler: Kummer series did not converge");
}

double MittagLefflerAlphaOne(double beta, double x) {
  if (beta == 1.0) return std::exp(x);
  if (beta == 2.0) return x == 0.0 ? 1.0 : std::expm1(x) / x;
  if (x >= -1.0) return detail::MittagLefflerSeries(1.0, beta, x);
  if (beta > 1.0) return ExpOneBetaKummer(beta, x);
  // E_{1,b}(x) = 1/Gamma(b) + x E_{1,b+1}(x)
  return ReciprocalGamma(beta) + x * MittagLefflerAlphaOne(beta + 1.0, x);
}

}  // namespace

double Gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("Gamma: argument must be a positive finite number");
  }
  if (x < 0.5) {
    return kPi / (SinPi(x) * Gamma(1.0 - x));
  }
  if (x <= 20.0 && x == std::floor(x)) {
    double factorial = 1.0;  // exact in double up to 20!
    for (int k = 2; k < static_cast<int>(x); ++k) factorial *= k;
    return factorial;
  }
  const double xm1 = x - 1.0;
  const double t = xm1 + kLanczosG + 0.5;
  // Split the power so that t^(x-1/2) does not overflow before e^-t.
  const double half_pow = std::pow(t, 0.5 * (xm1 + 0.5));
  return std::sqrt(2.0 * kPi) * half_pow * (half_pow * std::exp(-t)) *
         LanczosSum(xm1);
}

double LogGamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("LogGamma: argument must be a positive finite number");
  }
  if (x < 0.5) {
    return std::log(kPi / SinPi(x)) - LogGamma(1.0 - x);
  }
  const double xm1 = x - 1.0;
  const double t = xm1 + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (xm1 + 0.5) * std::log(t) - t +
         std::log(LanczosSum(xm1));
}

double ReciprocalGamma(double x) {
  if (!std::isfinite(x)) {
    throw DomainError("ReciprocalGamma: argument must be finite");
  }
  if (x > 0.0) {
    if (x > 170.0) return std::exp(-LogGamma(x));
    return 1.0 / Gamma(x);
  }
  if (x == std::floor(x)) return 0.0;  // poles of Gamma
  // 1/Gamma(x) = sin(pi x) Gamma(1-x) / pi
  const double s = SinPi(x);
  const double y = 1.0 - x;
  if (y > 170.0) {
    const double mag = std::exp(LogGamma(y)) * std::abs(s) / kPi;
    return s < 0 ? -mag : mag;
  }
  return s * Gamma(y) / kPi;
}

namespace detail {

double MittagLefflerSeries(double alpha, double beta, double x) {
  RequireMlDomain(alpha, beta, x);
  double sum = ReciprocalGamma(beta);
  if (x == 0.0) return sum;
  const double ax = std::abs(x);
  const bool alternating = x < 0.0;
  double max_term = std::abs(sum);
  double prev = std::abs(sum);
  for (int k = 1; k <= kMaxSeriesTerms; ++k) {
    const double mag = SeriesTermMagnitude(ax, k, alpha, beta);
    const double term = (alternating && (k % 2 == 1)) ? -mag : mag;
    sum += term;
    max_term = std::max(max_term, mag);
    if (!std::isfinite(sum)) {
      throw AccuracyError("Mittag-Leffler series overflowed at x = " +
                          std::to_string(x));
    }
    const bool past_gamma_min = alpha * k + beta > 2.0;
    if (past_gamma_min && mag <= prev && mag < 1e-16 * std::abs(sum)) {
      if (kEps * max_term * 8.0 > 0.1 * kMlRelTol * std::abs(sum)) {
        throw AccuracyError(
            "Mittag-Leffler series lost precision to cancellation at x = " +
            std::to_string(x));
      }
      return sum;
    }
    prev = mag;
  }
  throw AccuracyError("Mittag-Leffler series exceeded " +
                      std::to_string(kMaxSeriesTerms) + " terms at x = " +
                      std::to_string(x));
}

double MittagLefflerAsymptotic(double alpha, double beta, double x) {
  RequireMlDomain(alpha, beta, x);
  if (!(x < 0.0) || alpha >= 1.0) {
    throw AccuracyError(
        "Mittag-Leffler asymptotic expansion needs alpha < 1 and x < 0");
  }
  // E_{a,b}(x) ~ -sum_{k>=1} x^-k / Gamma(b - a k)
  // Truncation is judged on the envelope |x|^-k Gamma(1 + |b - a k|), which
  // bounds every term but does not dip where sin(pi (b - a k)) is small.
  const double ax = std::abs(x);
  const double log_ax = std::log(ax);
  double sum = 0.0;
  double prev_envelope = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= 400; ++k) {
    const double arg = beta - alpha * k;
    const double envelope =
        std::exp(LogGamma(1.0 + std::abs(arg)) - k * log_ax);
    if (envelope > prev_envelope) {
      // Diverging from here on; the remainder is of the order of the
      // smallest envelope.
      if (sum != 0.0 && prev_envelope <= 1e-3 * kMlRelTol * std::abs(sum)) {
        return sum;
      }
      break;
    }
    if (sum != 0.0 && envelope < 1e-17 * std::abs(sum)) return sum;
    prev_envelope = envelope;
    // x^-k carries (-1)^k for negative x.
    const double parity = (k % 2 == 1) ? -1.0 : 1.0;
    sum -= parity * std::pow(ax, -k) * ReciprocalGamma(arg);
    if (!std::isfinite(sum)) break;
  }
  throw AccuracyError(
      "Mittag-Leffler asymptotic expansion cannot certify tolerance at x = " +
      std::to_string(x));
}

double MittagLefflerIntegral(double alpha, double beta, double x) {
  RequireMlDomain(alpha, beta, x);
  if (!(x < 0.0) || alpha >= 1.0) {
    throw AccuracyError(
        "Mittag-Leffler integral representation needs alpha < 1 and x < 0");
  }
  if (beta >= 1.0 + alpha) {
    // E_{a,b}(x) = (E_{a,b-a}(x) - 1/Gamma(b-a)) / x
    return (MittagLefflerIntegral(alpha, beta - alpha, x) -
            ReciprocalGamma(beta - alpha)) /
           x;
  }
  // Real-line representation valid for |arg x| > alpha*pi, beta < 1+alpha:
  //   E = int_0^inf K(r) dr,
  //   K(r) = r^((1-b)/a) exp(-r^(1/a)) (r sin(pi(1-b)) - x sin(pi(1-b+a)))
  //          / (a pi (r^2 - 2 r x cos(pi a) + x^2)).
  const double s1 = SinPi(1.0 - beta);
  const double s2 = SinPi(1.0 - beta + alpha);
  const double cos_pa = std::cos(kPi * alpha);
  const double inv_alpha = 1.0 / alpha;
  const double power = (1.0 - beta) * inv_alpha;
  const double prefactor = 1.0 / (alpha * kPi);
  // The denominator is (r - c)^2 + w^2 with c = x cos(pi a) and
  // w = |x| sin(pi a). As a -> 1 this is a Lorentzian of width w around
  // c > 0; writing K = g / den, the peak is integrated in closed form and
  // only the smooth remainder goes to quadrature.
  const double center = x * cos_pa;
  const double half_width = -x * SinPi(1.0 - alpha);
  const double w2 = half_width * half_width;
  const double q = inv_alpha;
  auto g = [&](double r) {
    if (r <= 0.0) return 0.0;
    return prefactor * std::exp(power * std::log(r) - std::pow(r, q)) *
           (r * s1 - x * s2);
  };
  auto kernel = [&](double r) {
    const double dr = r - center;
    return g(r) / (dr * dr + w2);
  };
  // exp(-r^(1/a)) < e^-60 beyond the cutoff.
  const double cutoff = std::max(std::pow(60.0, alpha), 2.0 * center);

  boost::math::quadrature::tanh_sinh<double> integrator;
  double total = 0.0;
  double total_err = 0.0;
  double l1 = 0.0;
  auto add_piece = [&](auto f, double a, double b) {
    if (!(b > a)) return;
    double err = 0.0;
    double piece_l1 = 0.0;
    total += integrator.integrate(f, a, b, 1e-14, &err, &piece_l1);
    total_err += err;
    l1 += piece_l1;
  };
  if (center > 0.0 && half_width < 0.1 * center) {
    // Derivatives of g at the peak: g = P e^L m with m linear in r.
    const double c = center;
    const double e = prefactor * std::exp(power * std::log(c) - std::pow(c, q));
    const double m = c * s1 - x * s2;
    const double dl = power / c - q * std::pow(c, q - 1.0);
    const double d2l =
        -power / (c * c) - q * (q - 1.0) * std::pow(c, q - 2.0);
    const double g0 = e * m;
    const double g1 = e * (dl * m + s1);
    const double g2 = e * ((d2l + dl * dl) * m + 2.0 * dl * s1);
    // On |u| <= near the remainder (g(c+u) - g0 - g1 u) / (u^2 + w^2) is
    // smooth; the g1 term integrates to zero by symmetry.
    const double near = 0.5 * c;
    const double taylor = 1e-4 * c;
    auto remainder = [&](double u) {
      const double u2 = u * u;
      if (std::abs(u) < taylor) return 0.5 * g2 * u2 / (u2 + w2);
      return (g(c + u) - g0 - g1 * u) / (u2 + w2);
    };
    total += g0 * 2.0 * std::atan(near / half_width) / half_width;
    l1 += std::abs(total);
    add_piece(remainder, -near, 0.0);
    add_piece(remainder, 0.0, near);
    add_piece(kernel, 0.0, c - near);
    add_piece(kernel, c + near, cutoff);
  } else {
    const double split = std::min(std::max(center, half_width), 0.5 * cutoff);
    add_piece(kernel, 0.0, split);
    add_piece(kernel, split, cutoff);
  }
  if (!std::isfinite(total) ||
      total_err > 0.1 * kMlRelTol * std::abs(total) ||
      kEps * l1 > 0.1 * kMlRelTol * std::abs(total)) {
    throw AccuracyError(
        "Mittag-Leffler integral representation cannot certify tolerance at "
        "x = " +
        std::to_string(x));
  }
  return total;
}

}  // namespace detail

double MittagLeffler(const MLQuery& q) {
  return MittagLeffler(q.alpha, q.beta, q.x);
}

double MittagLeffler(double alpha, double beta, double x) {
  RequireMlDomain(alpha, beta, x);
  if (alpha == 1.0) return MittagLefflerAlphaOne(beta, x);
  if (x >= -1.0) return detail::MittagLefflerSeries(alpha, beta, x);
  try {
    return detail::MittagLefflerAsymptotic(alpha, beta, x);
  } catch (const AccuracyError&) {
    // fall through to the integral representation
  }
  return detail::MittagLefflerIntegral(alpha, beta, x);
}

MLDerivativePair MLDerivativeCheck(double alpha, double c, double t,
                                   double h_fd) {
  if (!(h_fd > 0.0) || !(t > h_fd)) {
    throw DomainError("MLDerivativeCheck requires t > h_fd > 0");
  }
  MLDerivativePair out;
  const double ta = std::pow(t, alpha);
  out.analytic = c * std::pow(t, alpha - 1.0) * MittagLeffler(alpha, alpha, c * ta);
  const double up = MittagLeffler(alpha, 1.0, c * std::pow(t + h_fd, alpha));
  const double down = MittagLeffler(alpha, 1.0, c * std::pow(t - h_fd, alpha));
  out.finite_diff = (up - down) / (2.0 * h_fd);
  return out;
}

}  // namespace fracdelay
