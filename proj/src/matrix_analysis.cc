#include "fracdelay/matrix_analysis.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "fracdelay/errors.h"

namespace fracdelay {
namespace {

void RequireSquare(const RealMatrix& a, const char* what) {
  if (a.rows() == 0 || a.rows() != a.cols()) {
    throw DimensionError(std::string(what) + ": matrix must be square, got " +
                         std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()));
  }
}

// Parlett-Reinsch balancing with radix 2, so the scaling is exact. Returns
// a similar matrix with comparable row and column norms.
RealMatrix Balance(RealMatrix a) {
  const Eigen::Index n = a.rows();
  bool converged = false;
  while (!converged) {
    converged = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0.0;
      double r = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      const double s = c + r;
      double f = 1.0;
      double g = r / 2.0;
      while (c < g) {
        f *= 2.0;
        c *= 4.0;
      }
      g = r * 2.0;
      while (c > g) {
        f /= 2.0;
        c /= 4.0;
      }
      // c now holds the column norm times f^2.
      if (f != 1.0 && (c + r) / f < 0.95 * s) {
        converged = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
  return a;
}

}  // namespace

const char* VerdictName(Verdict v) {
  switch (v) {
    case Verdict::kYes:
      return "yes";
    case Verdict::kNo:
      return "no";
    case Verdict::kIndeterminate:
      return "indeterminate";
  }
  return "indeterminate";
}

void RequireFiniteMatrix(const RealMatrix& m, const char* name) {
  if (m.size() == 0) {
    throw DimensionError(std::string(name) + ": matrix is empty");
  }
  if (!m.allFinite()) {
    throw DomainError(std::string(name) + ": matrix has non-finite entries");
  }
}

bool IsMetzler(const RealMatrix& a) {
  RequireSquare(a, "IsMetzler");
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (i != j && !(a(i, j) >= 0.0)) return false;
    }
  }
  return true;
}

bool IsNonnegative(const RealMatrix& m) {
  return (m.array() >= 0.0).all();
}

SpectralSummary ComputeSpectralSummary(const RealMatrix& a) {
  RequireSquare(a, "ComputeSpectralSummary");
  if (a.rows() > kMaxSpectralDimension) {
    throw DimensionError("ComputeSpectralSummary: dimension " +
                         std::to_string(a.rows()) + " exceeds " +
                         std::to_string(kMaxSpectralDimension));
  }
  RequireFiniteMatrix(a, "ComputeSpectralSummary");
  Eigen::EigenSolver<RealMatrix> solver(Balance(a), false);
  if (solver.info() != Eigen::Success) {
    throw AccuracyError("ComputeSpectralSummary: QR iteration did not converge");
  }
  SpectralSummary s;
  const auto& ev = solver.eigenvalues();
  s.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  s.spectral_abscissa = -std::numeric_limits<double>::infinity();
  for (const auto& z : s.eigenvalues) {
    s.spectral_abscissa = std::max(s.spectral_abscissa, z.real());
    s.spectral_radius = std::max(s.spectral_radius, std::abs(z));
  }
  return s;
}

bool IsHurwitz(const RealMatrix& a, double tol) {
  return ComputeSpectralSummary(a).spectral_abscissa < -tol;
}

bool IsSchur(const RealMatrix& m, double tol) {
  return ComputeSpectralSummary(m).spectral_radius < 1.0 - tol;
}

Verdict HurwitzVerdict(const SpectralSummary& s, double tol) {
  if (s.spectral_abscissa < -tol) return Verdict::kYes;
  if (s.spectral_abscissa > tol) return Verdict::kNo;
  return Verdict::kIndeterminate;
}

Verdict SchurVerdict(const SpectralSummary& s, double tol) {
  if (s.spectral_radius < 1.0 - tol) return Verdict::kYes;
  if (s.spectral_radius > 1.0 + tol) return Verdict::kNo;
  return Verdict::kIndeterminate;
}

MetzlerHurwitzCertificate CertifyMetzlerHurwitz(const RealMatrix& a,
                                                double tol) {
  if (!IsMetzler(a)) {
    throw std::invalid_argument("CertifyMetzlerHurwitz: matrix is not Metzler");
  }
  MetzlerHurwitzCertificate cert;
  cert.verdict = IsHurwitz(a, tol);
  if (!cert.verdict) return cert;
  try {
    const RealMatrix inv = InverseChecked(a);
    cert.neg_inverse = -inv;
    cert.lambda = -inv * RealVector::Ones(a.rows());
  } catch (const SingularMatrixError&) {
    throw std::logic_error(
        "CertifyMetzlerHurwitz: Hurwitz matrix reported singular");
  }
  return cert;
}

NonnegSchurCertificate CertifyNonnegSchur(const RealMatrix& m, double tol) {
  RequireSquare(m, "CertifyNonnegSchur");
  if (!IsNonnegative(m)) {
    throw std::invalid_argument("CertifyNonnegSchur: matrix is not nonnegative");
  }
  NonnegSchurCertificate cert;
  cert.verdict = IsSchur(m, tol);
  if (!cert.verdict) return cert;
  const RealMatrix resolvent = RealMatrix::Identity(m.rows(), m.cols()) - m;
  try {
    cert.inv_resolvent = InverseChecked(resolvent);
    cert.eta = *cert.inv_resolvent * RealVector::Ones(m.rows());
  } catch (const SingularMatrixError&) {
    throw std::logic_error("CertifyNonnegSchur: Schur matrix gave singular I-M");
  }
  return cert;
}

bool RowSumLtOne(const RealMatrix& m, bool absolute) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const double s = absolute ? m.row(i).cwiseAbs().sum() : m.row(i).sum();
    if (!(s < 1.0)) return false;
  }
  return true;
}

double InfNorm(const RealMatrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

RealMatrix SolveChecked(const RealMatrix& m, const RealMatrix& rhs) {
  RequireSquare(m, "SolveChecked");
  if (rhs.rows() != m.rows()) {
    throw DimensionError("SolveChecked: right-hand side has " +
                         std::to_string(rhs.rows()) + " rows, expected " +
                         std::to_string(m.rows()));
  }
  RequireFiniteMatrix(m, "SolveChecked");
  const Eigen::PartialPivLU<RealMatrix> lu(m);
  const double threshold = kSingularPivotRatio * InfNorm(m);
  const auto pivots = lu.matrixLU().diagonal();
  for (Eigen::Index i = 0; i < pivots.size(); ++i) {
    if (!(std::abs(pivots(i)) >= threshold) || pivots(i) == 0.0) {
      throw SingularMatrixError("matrix is singular to working precision "
                                "(pivot " +
                                std::to_string(i) + ")");
    }
  }
  return lu.solve(rhs);
}

RealMatrix InverseChecked(const RealMatrix& m) {
  RequireSquare(m, "InverseChecked");
  return SolveChecked(m, RealMatrix::Identity(m.rows(), m.cols()));
}

}  // namespace fracdelay
