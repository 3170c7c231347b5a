#include "fracdelay/analysis.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include <json.hpp>

#include "fracdelay/errors.h"

namespace fracdelay {
namespace {

using Json = nlohmann::ordered_json;

std::string Num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string VecText(const RealVector& v) {
  std::string out = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i > 0) out += ", ";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", v(i));
    out += buf;
  }
  return out + ")";
}

Json VectorJson(const RealVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Json MatrixJson(const RealMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    out.push_back(std::move(row));
  }
  return out;
}

const char* AttractiveName(Verdict v) {
  switch (v) {
    case Verdict::kYes:
      return "true";
    case Verdict::kNo:
      return "false";
    case Verdict::kIndeterminate:
      break;
  }
  return "indeterminate";
}

RealMatrix IMinusDInverse(const MultiOrderSystem& s) {
  return InverseChecked(RealMatrix::Identity(s.n(), s.n()) - s.D);
}

}  // namespace

std::string PositivityDetail::Label() const {
  return positive() ? "positive" : "not positive (for some admissible delays)";
}

PositivityDetail ClassifyPositivity(const MultiOrderSystem& s) {
  s.CheckWellFormed();
  PositivityDetail p;
  p.a_metzler = IsMetzler(s.A);
  p.b_nonnegative = IsNonnegative(s.B);
  p.c_nonnegative = IsNonnegative(s.C);
  p.d_nonnegative = IsNonnegative(s.D);
  p.e_nonnegative = IsNonnegative(s.E);
  p.c1 = RowSumLtOne(s.C);
  p.d1 = RowSumLtOne(s.D);
  return p;
}

RealMatrix EffectiveMatrix(const MultiOrderSystem& s) {
  s.CheckWellFormed();
  return s.A + s.B + s.E * IMinusDInverse(s) * s.C;
}

const char* RegimeName(Regime r) {
  switch (r) {
    case Regime::kHomogeneous:
      return "homogeneous";
    case Regime::kVanishing:
      return "vanishing";
    case Regime::kBounded:
      break;
  }
  return "bounded";
}

std::optional<Regime> ParseRegime(std::string_view name) {
  for (Regime r : {Regime::kHomogeneous, Regime::kVanishing, Regime::kBounded}) {
    if (name == RegimeName(r)) return r;
  }
  return std::nullopt;
}

Regime SelectRegime(const MultiOrderSystem& s, std::optional<Regime> declared,
                    bool bounds_supplied) {
  if (s.IsHomogeneous()) return Regime::kHomogeneous;
  if (declared && *declared != Regime::kHomogeneous) return *declared;
  return bounds_supplied ? Regime::kBounded : Regime::kVanishing;
}

Attractivity CheckAttractivity(const MultiOrderSystem& s, Regime regime) {
  const SpectralSummary spec = ComputeSpectralSummary(EffectiveMatrix(s));
  Attractivity out;
  out.regime = regime;
  out.margin = -spec.spectral_abscissa;
  // An abscissa of exactly 0 (or above) is a definite no; only slightly
  // negative values inside the tolerance band are left open.
  if (spec.spectral_abscissa < -kSpectralTol) {
    out.verdict = Verdict::kYes;
  } else if (spec.spectral_abscissa >= 0.0) {
    out.verdict = Verdict::kNo;
  } else {
    out.verdict = Verdict::kIndeterminate;
  }
  const bool positive = ClassifyPositivity(s).positive();
  out.necessary_and_sufficient = positive && regime == Regime::kHomogeneous;
  if (!positive) {
    out.note =
        "positivity hypotheses fail: the Hurwitz test is used in the "
        "sufficient direction only";
  } else if (regime == Regime::kHomogeneous) {
    out.note = "positive homogeneous system: Hurwitz test is necessary and "
               "sufficient";
  } else if (regime == Regime::kVanishing) {
    out.note = "sufficient condition, assuming f(t) -> 0 and g(t) -> 0";
  } else {
    out.note = "bounded forcing: a Hurwitz effective matrix gives the "
               "asymptotic bound below";
  }
  return out;
}

AsymptoticBound ComputeAsymptoticBound(const MultiOrderSystem& s,
                                       const RealVector& F,
                                       const RealVector& G) {
  s.CheckWellFormed();
  if (F.size() != s.d() || G.size() != s.n()) {
    throw DimensionError("asymptotic bound: F needs length " +
                         std::to_string(s.d()) + " and G length " +
                         std::to_string(s.n()));
  }
  if (!F.allFinite() || !G.allFinite() || (F.array() < 0.0).any() ||
      (G.array() < 0.0).any()) {
    throw DomainError("asymptotic bound: F and G must be finite and >= 0");
  }
  const RealMatrix h_inv = IMinusDInverse(s);
  const RealMatrix eff = s.A + s.B + s.E * h_inv * s.C;
  const SpectralSummary spec = ComputeSpectralSummary(eff);
  if (!(spec.spectral_abscissa < -kSpectralTol)) {
    throw DomainError("asymptotic bound: effective matrix is not Hurwitz "
                      "(spectral abscissa " +
                      Num(spec.spectral_abscissa) + ")");
  }
  AsymptoticBound b;
  b.F = F;
  b.G = G;
  b.x_star = -SolveChecked(eff, F + s.E * (h_inv * G));
  b.y_star = SolveChecked(RealMatrix::Identity(s.n(), s.n()) - s.D,
                          s.C * b.x_star + G);
  const RealMatrix h = h_inv * s.C;
  b.condition_ii_holds = true;
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    if (!(h.row(i).maxCoeff() > kConditionIiTol)) b.condition_ii_holds = false;
  }
  return b;
}

RealVector SupBoundEstimate(const std::vector<TimeExpr>& exprs,
                            double horizon, int samples) {
  if (samples < 1000) {
    throw DomainError("sup estimate needs at least 1000 samples");
  }
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw DomainError("sup estimate needs a positive finite horizon");
  }
  RealVector out(static_cast<Eigen::Index>(exprs.size()));
  for (std::size_t i = 0; i < exprs.size(); ++i) {
    double best = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < samples; ++k) {
      const double t = horizon * k / (samples - 1);
      best = std::max(best, exprs[i].Eval(t));
    }
    out(static_cast<Eigen::Index>(i)) = best;
  }
  return out;
}

AnalysisReport Analyze(const MultiOrderSystem& s,
                       const AnalyzeOptions& options) {
  s.CheckWellFormed();
  const double c_norm = InfNorm(s.C);
  const double d_norm = InfNorm(s.D);
  if (!(c_norm < 1.0)) {
    throw ValidationError("condition (c1) fails: max row sum of |C| is " +
                          Num(c_norm) + ", must be < 1");
  }
  if (!(d_norm < 1.0)) {
    throw ValidationError("condition (d1) fails: max row sum of |D| is " +
                          Num(d_norm) + ", must be < 1");
  }

  AnalysisReport rep;
  rep.positivity = ClassifyPositivity(s);
  rep.effective_matrix = EffectiveMatrix(s);
  rep.effective_spectrum = ComputeSpectralSummary(rep.effective_matrix);
  rep.regime = SelectRegime(s, options.regime,
                            options.F.has_value() || options.G.has_value());
  if (s.IsHomogeneous() && options.regime &&
      *options.regime != Regime::kHomogeneous) {
    rep.notes.push_back(std::string("declared regime '") +
                        RegimeName(*options.regime) +
                        "' ignored: all forcing terms are zero");
  }
  rep.attractive = CheckAttractivity(s, rep.regime);

  if (rep.regime == Regime::kBounded) {
    bool sampled = false;
    auto pick = [&](const std::optional<RealVector>& given,
                    const std::vector<TimeExpr>& exprs, const char* name) {
      if (given) return *given;
      sampled = true;
      RealVector est =
          SupBoundEstimate(exprs, options.sup_horizon, options.sup_samples);
      if ((est.array() < 0.0).any()) {
        rep.notes.push_back(std::string("negative sampled sup of ") + name +
                            " clamped to 0");
        est = est.cwiseMax(0.0);
      }
      return est;
    };
    const RealVector F = pick(options.F, s.f, "f");
    const RealVector G = pick(options.G, s.g, "g");
    if (rep.attractive.verdict == Verdict::kYes) {
      rep.bound = ComputeAsymptoticBound(s, F, G);
      if (sampled) {
        rep.bound->source = "sampled estimate";
        rep.notes.push_back("sup of forcing sampled on [0, " +
                            Num(options.sup_horizon) + "] with " +
                            std::to_string(options.sup_samples) + " points");
      }
      if (!rep.bound->condition_ii_holds) {
        rep.notes.push_back("condition (ii) fails: (x*, y*) is an upper "
                            "bound, not necessarily the smallest");
      }
    } else {
      rep.notes.push_back("effective matrix is not Hurwitz: no bound");
    }
  }
  return rep;
}

std::string ReportToJson(const AnalysisReport& r) {
  Json j;
  j["regime"] = RegimeName(r.regime);
  Json pos;
  pos["a_metzler"] = r.positivity.a_metzler;
  pos["b_nonnegative"] = r.positivity.b_nonnegative;
  pos["c_nonnegative"] = r.positivity.c_nonnegative;
  pos["d_nonnegative"] = r.positivity.d_nonnegative;
  pos["e_nonnegative"] = r.positivity.e_nonnegative;
  pos["c1"] = r.positivity.c1;
  pos["d1"] = r.positivity.d1;
  pos["positive"] = r.positivity.positive();
  pos["label"] = r.positivity.Label();
  j["positivity"] = std::move(pos);
  j["effective_matrix"] = MatrixJson(r.effective_matrix);
  Json spec;
  Json eig = Json::array();
  for (const auto& z : r.effective_spectrum.eigenvalues) {
    eig.push_back({{"re", z.real()}, {"im", z.imag()}});
  }
  spec["eigenvalues"] = std::move(eig);
  spec["spectral_abscissa"] = r.effective_spectrum.spectral_abscissa;
  spec["spectral_radius"] = r.effective_spectrum.spectral_radius;
  j["effective_spectrum"] = std::move(spec);
  Json att;
  switch (r.attractive.verdict) {
    case Verdict::kYes:
      att["verdict"] = true;
      break;
    case Verdict::kNo:
      att["verdict"] = false;
      break;
    case Verdict::kIndeterminate:
      att["verdict"] = "indeterminate";
      break;
  }
  att["margin"] = r.attractive.margin;
  att["necessary_and_sufficient"] = r.attractive.necessary_and_sufficient;
  att["note"] = r.attractive.note;
  j["attractive"] = std::move(att);
  if (r.bound) {
    Json b;
    b["F"] = VectorJson(r.bound->F);
    b["G"] = VectorJson(r.bound->G);
    b["x_star"] = VectorJson(r.bound->x_star);
    b["y_star"] = VectorJson(r.bound->y_star);
    b["condition_ii_holds"] = r.bound->condition_ii_holds;
    b["source"] = r.bound->source;
    j["bound"] = std::move(b);
  } else {
    j["bound"] = nullptr;
  }
  j["notes"] = r.notes;
  return j.dump(2) + "\n";
}

std::string ReportSummary(const AnalysisReport& r) {
  std::string out;
  out += "regime: " + std::string(RegimeName(r.regime)) + "\n";
  out += "positivity: " + r.positivity.Label() + "\n";
  out += "effective spectral abscissa: " +
         Num(r.effective_spectrum.spectral_abscissa) + "\n";
  out += "attractive: " + std::string(AttractiveName(r.attractive.verdict)) +
         " (" + r.attractive.note + ")\n";
  if (r.bound) {
    out += "x* = " + VecText(r.bound->x_star) + "\n";
    out += "y* = " + VecText(r.bound->y_star) + "\n";
    out += "bound source: " + r.bound->source + "\n";
  }
  for (const auto& n : r.notes) out += "note: " + n + "\n";
  return out;
}

}  // namespace fracdelay
