#include "fracdelay/matrix_analysis.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "fracdelay/errors.h"
#include "equivalence_triads.h"

namespace fracdelay {
namespace {

RealMatrix Mat(std::initializer_list<std::initializer_list<double>> rows) {
  const auto n_rows = static_cast<Eigen::Index>(rows.size());
  const auto n_cols = static_cast<Eigen::Index>(rows.begin()->size());
  RealMatrix m(n_rows, n_cols);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

const RealMatrix kA1 = Mat({{-2.2, 0.2, 0.1}, {0.3, -2.4, 0.2}, {0.5, 0.2, -2.3}});
const RealMatrix kB1 = Mat({{0.2, 0.1, 0.3}, {0.2, 0.2, 0.1}, {0.1, 0.3, 0.5}});
const RealMatrix kE1 = Mat({{0.2, 0.1}, {0.2, 0.3}, {0.3, 0.4}});
const RealMatrix kC1 = Mat({{0.1, 0.2, 0.1}, {0.1, 0.3, 0.1}});
const RealMatrix kD1 = Mat({{0.1, 0.2}, {0.2, 0.1}});

std::vector<double> SortedReal(const SpectralSummary& s) {
  std::vector<double> out;
  for (const auto& z : s.eigenvalues) out.push_back(z.real());
  std::sort(out.begin(), out.end());
  return out;
}

TEST(SignPatternTest, Metzler) {
  EXPECT_TRUE(IsMetzler(kA1));
  EXPECT_TRUE(IsMetzler(RealMatrix::Identity(4, 4)));
  EXPECT_FALSE(IsMetzler(Mat({{0.0, -0.1}, {0.0, 0.0}})));
  // Diagonal sign is irrelevant.
  EXPECT_TRUE(IsMetzler(Mat({{-100.0, 0.0}, {0.0, -1e-300}})));
  EXPECT_THROW(IsMetzler(kE1), DimensionError);
}

TEST(SignPatternTest, Nonnegative) {
  EXPECT_TRUE(IsNonnegative(kB1));
  EXPECT_TRUE(IsNonnegative(RealMatrix::Zero(2, 3)));
  EXPECT_FALSE(IsNonnegative(Mat({{1.0, -1e-12}})));
  EXPECT_FALSE(IsNonnegative(kA1));
}

TEST(SpectralSummaryTest, Examples) {
  const auto diag = ComputeSpectralSummary(Mat({{-1.0, 0.0}, {0.0, -2.0}}));
  EXPECT_EQ(SortedReal(diag), (std::vector<double>{-2.0, -1.0}));
  EXPECT_DOUBLE_EQ(diag.spectral_abscissa, -1.0);
  EXPECT_DOUBLE_EQ(diag.spectral_radius, 2.0);

  const auto d = ComputeSpectralSummary(kD1);
  const auto d_eigs = SortedReal(d);
  EXPECT_NEAR(d_eigs[0], -0.1, 1e-14);
  EXPECT_NEAR(d_eigs[1], 0.3, 1e-14);
  EXPECT_NEAR(d.spectral_radius, 0.3, 1e-14);

  const auto rot = ComputeSpectralSummary(Mat({{0.0, 1.0}, {-1.0, 0.0}}));
  ASSERT_EQ(rot.eigenvalues.size(), 2u);
  for (const auto& z : rot.eigenvalues) {
    EXPECT_NEAR(z.real(), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(z.imag()), 1.0, 1e-15);
  }
  EXPECT_NEAR(rot.spectral_abscissa, 0.0, 1e-15);
  EXPECT_NEAR(rot.spectral_radius, 1.0, 1e-15);
}

TEST(SpectralSummaryTest, Errors) {
  EXPECT_THROW(ComputeSpectralSummary(kE1), DimensionError);
  EXPECT_THROW(ComputeSpectralSummary(RealMatrix::Identity(65, 65)),
               DimensionError);
  RealMatrix bad = RealMatrix::Identity(2, 2);
  bad(0, 1) = NAN;
  EXPECT_THROW(ComputeSpectralSummary(bad), DomainError);
}

// Balancing matters for badly scaled matrices: eigenvalues of a diagonal
// matrix hidden behind an extreme similarity must survive.
TEST(SpectralSummaryTest, BadlyScaledSimilarity) {
  RealMatrix a = Mat({{-1.0, 1.0, 0.0}, {0.0, -2.0, 1.0}, {0.0, 0.0, -3.0}});
  RealMatrix s = RealMatrix::Identity(3, 3);
  s(0, 0) = 1e-6;
  s(2, 2) = 1e6;
  const RealMatrix scaled = s * a * s.inverse();
  const auto eigs = SortedReal(ComputeSpectralSummary(scaled));
  EXPECT_NEAR(eigs[0], -3.0, 3e-9);
  EXPECT_NEAR(eigs[1], -2.0, 2e-9);
  EXPECT_NEAR(eigs[2], -1.0, 1e-9);
}

TEST(SpectralSummaryTest, GramMatrixHasRealNonnegativeSpectrum) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> entry(-3.0, 3.0);
  for (int k = 0; k < 100; ++k) {
    const int n = 2 + k % 7;
    RealMatrix a(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) a(i, j) = entry(rng);
    }
    const auto s = ComputeSpectralSummary(a.transpose() * a);
    for (const auto& z : s.eigenvalues) {
      EXPECT_GE(z.real(), -1e-9);
      EXPECT_LE(std::abs(z.imag()), 1e-9 * std::max(1.0, s.spectral_radius));
    }
  }
}

TEST(HurwitzSchurTest, Examples) {
  EXPECT_TRUE(IsHurwitz(Mat({{-1.0}})));
  EXPECT_FALSE(IsHurwitz(Mat({{0.0}})));
  EXPECT_FALSE(IsHurwitz(Mat({{-1e-10}})));  // inside the margin
  const RealMatrix effective =
      kA1 + kB1 + kE1 * InverseChecked(RealMatrix::Identity(2, 2) - kD1) * kC1;
  EXPECT_TRUE(IsHurwitz(effective));

  EXPECT_TRUE(IsSchur(RealMatrix::Zero(3, 3)));
  EXPECT_FALSE(IsSchur(RealMatrix::Identity(3, 3)));
  EXPECT_TRUE(IsSchur(kD1));
}

TEST(HurwitzSchurTest, Verdicts) {
  SpectralSummary s;
  s.spectral_abscissa = -1e-3;
  EXPECT_EQ(HurwitzVerdict(s), Verdict::kYes);
  s.spectral_abscissa = 5e-10;
  EXPECT_EQ(HurwitzVerdict(s), Verdict::kIndeterminate);
  s.spectral_abscissa = 1e-3;
  EXPECT_EQ(HurwitzVerdict(s), Verdict::kNo);
  s.spectral_radius = 1.0;
  EXPECT_EQ(SchurVerdict(s), Verdict::kIndeterminate);
  s.spectral_radius = 0.5;
  EXPECT_EQ(SchurVerdict(s), Verdict::kYes);
  s.spectral_radius = 1.5;
  EXPECT_EQ(SchurVerdict(s), Verdict::kNo);
  EXPECT_STREQ(VerdictName(Verdict::kIndeterminate), "indeterminate");
}

TEST(CertificateTest, MetzlerHurwitz) {
  const auto id = CertifyMetzlerHurwitz(-RealMatrix::Identity(2, 2));
  ASSERT_TRUE(id.verdict);
  EXPECT_TRUE(id.lambda->isApprox(RealVector::Ones(2)));
  EXPECT_TRUE(id.neg_inverse->isApprox(RealMatrix::Identity(2, 2)));

  const auto swap = CertifyMetzlerHurwitz(Mat({{0.0, 1.0}, {1.0, 0.0}}));
  EXPECT_FALSE(swap.verdict);
  EXPECT_FALSE(swap.lambda.has_value());
  EXPECT_FALSE(swap.neg_inverse.has_value());

  const auto ex = CertifyMetzlerHurwitz(kA1);
  ASSERT_TRUE(ex.verdict);
  EXPECT_TRUE((ex.lambda->array() > 0.0).all());
  EXPECT_TRUE(((kA1 * *ex.lambda).array() + 1.0).abs().maxCoeff() < 1e-14);
  EXPECT_TRUE((ex.neg_inverse->array() >= 0.0).all());

  EXPECT_THROW(CertifyMetzlerHurwitz(Mat({{-1.0, -0.5}, {0.0, -1.0}})),
               std::invalid_argument);
}

TEST(CertificateTest, NonnegSchur) {
  const auto zero = CertifyNonnegSchur(RealMatrix::Zero(2, 2));
  ASSERT_TRUE(zero.verdict);
  EXPECT_TRUE(zero.eta->isApprox(RealVector::Ones(2)));
  EXPECT_TRUE(zero.inv_resolvent->isApprox(RealMatrix::Identity(2, 2)));

  const auto d = CertifyNonnegSchur(kD1);
  ASSERT_TRUE(d.verdict);
  const RealMatrix expected = Mat({{0.9, 0.2}, {0.2, 0.9}}) / 0.77;
  EXPECT_LT((*d.inv_resolvent - expected).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_NEAR((*d.inv_resolvent)(0, 0), 1.168831, 1e-6);
  EXPECT_NEAR((*d.inv_resolvent)(0, 1), 0.259740, 1e-6);
  EXPECT_LT(((kD1 - RealMatrix::Identity(2, 2)) * *d.eta + RealVector::Ones(2))
                .cwiseAbs()
                .maxCoeff(),
            1e-14);

  // Row sum 1.5 but spectral radius below one.
  const RealMatrix lopsided = Mat({{0.0, 1.5}, {0.1, 0.0}});
  const auto l = CertifyNonnegSchur(lopsided);
  EXPECT_EQ(l.verdict, IsSchur(lopsided));
  EXPECT_TRUE(l.verdict);
  // Row sum 1.5 and spectral radius 1.5.
  const auto over = CertifyNonnegSchur(Mat({{0.75, 0.75}, {0.75, 0.75}}));
  EXPECT_FALSE(over.verdict);
  EXPECT_FALSE(over.eta.has_value());

  EXPECT_THROW(CertifyNonnegSchur(Mat({{0.1, -0.1}, {0.0, 0.1}})),
               std::invalid_argument);
}

TEST(RowSumTest, Examples) {
  EXPECT_TRUE(RowSumLtOne(kC1));
  EXPECT_FALSE(RowSumLtOne(RealMatrix::Identity(2, 2)));
  EXPECT_TRUE(RowSumLtOne(Mat({{0.2, 0.5}, {0.3, 0.1}})));
  EXPECT_FALSE(RowSumLtOne(Mat({{0.5, -0.6}})));
  EXPECT_TRUE(RowSumLtOne(Mat({{0.5, -0.6}}), /*absolute=*/false));
  EXPECT_DOUBLE_EQ(InfNorm(Mat({{0.5, -0.6}, {0.1, 0.1}})), 1.1);
}

TEST(RowSumTest, ImpliesSchurForNonnegative) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> entry(0.0, 1.0);
  for (int k = 0; k < 300; ++k) {
    const int n = 2 + k % 5;
    RealMatrix m(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) m(i, j) = entry(rng);
    }
    m /= 0.99 * m.rowwise().sum().maxCoeff() * (1.0 + 0.02 * (k % 3));
    if (RowSumLtOne(m)) {
      EXPECT_TRUE(IsSchur(m));
    }
  }
}

TEST(LinearSolveTest, SingularityThreshold) {
  EXPECT_THROW(InverseChecked(Mat({{1.0, 2.0}, {2.0, 4.0}})),
               SingularMatrixError);
  EXPECT_THROW(InverseChecked(Mat({{1.0, 0.0}, {0.0, 1e-13}})),
               SingularMatrixError);
  EXPECT_NO_THROW(InverseChecked(Mat({{1.0, 0.0}, {0.0, 1e-11}})));
  EXPECT_THROW(SolveChecked(RealMatrix::Identity(2, 2), RealMatrix::Ones(3, 1)),
               DimensionError);
  const RealMatrix x = SolveChecked(kA1, RealMatrix::Ones(3, 1));
  EXPECT_LT((kA1 * x - RealMatrix::Ones(3, 1)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(EquivalenceTriadTest, MetzlerHurwitz) {
  const auto stats = test::RunMetzlerHurwitzTriad(500, 20240501);
  EXPECT_EQ(stats.disagreements, 0);
  // Both outcomes must actually be exercised.
  EXPECT_GT(stats.positives, 10);
  EXPECT_LT(stats.positives, 490);
}

TEST(EquivalenceTriadTest, NonnegSchur) {
  const auto stats = test::RunNonnegSchurTriad(500, 20240502);
  EXPECT_EQ(stats.disagreements, 0);
  EXPECT_GT(stats.positives, 100);
  EXPECT_LT(stats.positives, 400);
}

}  // namespace
}  // namespace fracdelay
