#pragma once

/** \file analysis.h
 * \brief Positivity classification, global attractivity and the smallest
 * asymptotic bound for the delayed coupled system. */

#include <optional>
#include <string>
#include <vector>

#include "fracdelay/matrix_analysis.h"
#include "fracdelay/system_model.h"
#include "fracdelay/time_expr.h"

namespace fracdelay {

/// Entries of (I - D)^{-1} C above this count as strictly positive.
inline constexpr double kConditionIiTol = 1e-12;

struct PositivityDetail {
  bool a_metzler = false;
  bool b_nonnegative = false;
  bool c_nonnegative = false;
  bool d_nonnegative = false;
  bool e_nonnegative = false;
  bool c1 = false;
  bool d1 = false;

  bool positive() const {
    return a_metzler && b_nonnegative && c_nonnegative && d_nonnegative &&
           e_nonnegative && c1 && d1;
  }
  /// "positive" or "not positive (for some admissible delays)".
  std::string Label() const;
};

/// Sign tests are strict: -1e-15 is negative. Throws DimensionError.
PositivityDetail ClassifyPositivity(const MultiOrderSystem& s);

/// A + B + E (I - D)^{-1} C. Throws SingularMatrixError.
RealMatrix EffectiveMatrix(const MultiOrderSystem& s);

enum class Regime { kHomogeneous, kVanishing, kBounded };

const char* RegimeName(Regime r);
/// Accepts "homogeneous", "vanishing", "bounded".
std::optional<Regime> ParseRegime(std::string_view name);

/// Homogeneous whenever every forcing expression is the literal 0;
/// otherwise the declared regime, else bounded if sup bounds were supplied
/// and vanishing if not.
Regime SelectRegime(const MultiOrderSystem& s, std::optional<Regime> declared,
                    bool bounds_supplied);

struct Attractivity {
  Verdict verdict = Verdict::kIndeterminate;
  double margin = 0.0;  // minus the spectral abscissa of the effective matrix
  Regime regime = Regime::kHomogeneous;
  /// True when the verdict is a characterization, false when only the
  /// sufficient direction applies.
  bool necessary_and_sufficient = false;
  std::string note;
};

/// Hurwitz test of the effective matrix. The verdict is an equivalence only
/// for positive homogeneous systems; otherwise it is labeled sufficient.
Attractivity CheckAttractivity(const MultiOrderSystem& s, Regime regime);

struct AsymptoticBound {
  RealVector F;
  RealVector G;
  RealVector x_star;
  RealVector y_star;
  /// Every row of (I - D)^{-1} C has an entry > kConditionIiTol. Without it
  /// (x*, y*) is an upper bound but not necessarily the smallest one.
  bool condition_ii_holds = false;
  /// "exact" for user or scenario supplied F, G; "sampled estimate" else.
  std::string source = "exact";
};

/** x* = -[A + B + E (I-D)^{-1} C]^{-1} (F + E (I-D)^{-1} G),
 *  y* = (I-D)^{-1} (C x* + G).
 * Throws DimensionError on length mismatch, DomainError for negative F or G
 * or a non-Hurwitz effective matrix, SingularMatrixError on failed solves. */
AsymptoticBound ComputeAsymptoticBound(const MultiOrderSystem& s,
                                       const RealVector& F,
                                       const RealVector& G);

/// Componentwise max of the expressions over `samples` equally spaced
/// points on [0, horizon]. A sampled estimate, not a certified supremum.
/// Throws DomainError if samples < 1000 or horizon <= 0.
RealVector SupBoundEstimate(const std::vector<TimeExpr>& exprs,
                            double horizon, int samples);

struct AnalyzeOptions {
  std::optional<Regime> regime;
  std::optional<RealVector> F;
  std::optional<RealVector> G;
  double sup_horizon = 1e4;
  int sup_samples = 100001;
};

struct AnalysisReport {
  Regime regime = Regime::kHomogeneous;
  PositivityDetail positivity;
  RealMatrix effective_matrix;
  SpectralSummary effective_spectrum;
  Attractivity attractive;
  std::optional<AsymptoticBound> bound;
  std::vector<std::string> notes;
};

/// Throws ValidationError if (c1) or (d1) fails; other hypotheses are
/// reported in the notes rather than enforced.
AnalysisReport Analyze(const MultiOrderSystem& s,
                       const AnalyzeOptions& options = {});

/// JSON document mirroring AnalysisReport, reals at round-trip precision.
std::string ReportToJson(const AnalysisReport& report);

/// Short multi-line summary for terminals.
std::string ReportSummary(const AnalysisReport& report);

}  // namespace fracdelay
