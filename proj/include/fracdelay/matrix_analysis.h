#pragma once

/** \file matrix_analysis.h
 * \brief Sign-pattern predicates, spectra and the Metzler/Hurwitz and
 * nonnegative/Schur certificates on dense real matrices. */

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace fracdelay {

using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Largest dimension accepted by ComputeSpectralSummary.
inline constexpr int kMaxSpectralDimension = 64;
/// Default margin for the strict Hurwitz and Schur inequalities.
inline constexpr double kSpectralTol = 1e-9;
/// LU pivots below this multiple of ||M||_inf count as zero.
inline constexpr double kSingularPivotRatio = 1e-12;

struct SpectralSummary {
  std::vector<std::complex<double>> eigenvalues;
  double spectral_abscissa = 0.0;  // max real part
  double spectral_radius = 0.0;    // max modulus
};

/// Three-way answer for spectral tests that sit on a tolerance band.
enum class Verdict { kNo, kYes, kIndeterminate };

const char* VerdictName(Verdict v);

/// Throws DimensionError if M is empty and DomainError if an entry is not
/// finite.
void RequireFiniteMatrix(const RealMatrix& m, const char* name);

/// Off-diagonal entries >= 0 (exact). Throws DimensionError unless square.
bool IsMetzler(const RealMatrix& a);

/// All entries >= 0 (exact).
bool IsNonnegative(const RealMatrix& m);

/// Eigenvalues by balancing, Hessenberg reduction and shifted QR.
/// Throws DimensionError for non-square input or dimension above
/// kMaxSpectralDimension, and AccuracyError if QR fails to converge.
SpectralSummary ComputeSpectralSummary(const RealMatrix& a);

/// spectral_abscissa < -tol.
bool IsHurwitz(const RealMatrix& a, double tol = kSpectralTol);
/// spectral_radius < 1 - tol.
bool IsSchur(const RealMatrix& m, double tol = kSpectralTol);

/// kYes below -tol, kNo above +tol, kIndeterminate in between.
Verdict HurwitzVerdict(const SpectralSummary& s, double tol = kSpectralTol);
/// Same banding of the spectral radius around 1.
Verdict SchurVerdict(const SpectralSummary& s, double tol = kSpectralTol);

struct MetzlerHurwitzCertificate {
  bool verdict = false;
  /// lambda = -A^{-1} 1, strictly positive with A lambda = -1.
  std::optional<RealVector> lambda;
  /// -A^{-1}, entrywise nonnegative.
  std::optional<RealMatrix> neg_inverse;
};

/// For Metzler A: verdict = IsHurwitz(A) and, when true, the two algebraic
/// witnesses of stability. Throws std::invalid_argument if A is not
/// Metzler and std::logic_error if A is Hurwitz but numerically singular.
MetzlerHurwitzCertificate CertifyMetzlerHurwitz(const RealMatrix& a,
                                                double tol = kSpectralTol);

struct NonnegSchurCertificate {
  bool verdict = false;
  /// eta = (I - M)^{-1} 1, with (M - I) eta = -1.
  std::optional<RealVector> eta;
  /// (I - M)^{-1}, entrywise nonnegative.
  std::optional<RealMatrix> inv_resolvent;
};

/// For nonnegative M: verdict = IsSchur(M) plus witnesses when true.
NonnegSchurCertificate CertifyNonnegSchur(const RealMatrix& m,
                                          double tol = kSpectralTol);

/// Every row sum is < 1; with `absolute` the sums are of |m_ij|.
bool RowSumLtOne(const RealMatrix& m, bool absolute = true);

/// Max absolute row sum.
double InfNorm(const RealMatrix& m);

/// Solves M X = rhs by partial-pivot LU. Throws SingularMatrixError when a
/// pivot falls below kSingularPivotRatio * ||M||_inf.
RealMatrix SolveChecked(const RealMatrix& m, const RealMatrix& rhs);
RealMatrix InverseChecked(const RealMatrix& m);

}  // namespace fracdelay
