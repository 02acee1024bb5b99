#pragma once

/// \file
/// Theorem-level decisions on a relative complete intersection. Every
/// report lists the hypotheses it checked; a report whose hypotheses do not
/// all hold carries the conclusion Undetermined.

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "relci/bundle.hpp"
#include "relci/bundle_cones.hpp"
#include "relci/ci_invariants.hpp"
#include "relci/errors.hpp"
#include "relci/exact_math.hpp"
#include "relci/relative_ci.hpp"

namespace relci {

enum class TheoremTag { SmallH, Asymptotic, Slope, ConeMembership, Instability, ExampleFamily };

inline const char* to_string(TheoremTag tag) {
  switch (tag) {
    case TheoremTag::SmallH: return "SmallH";
    case TheoremTag::Asymptotic: return "Asymptotic";
    case TheoremTag::Slope: return "Slope";
    case TheoremTag::ConeMembership: return "ConeMembership";
    case TheoremTag::Instability: return "Instability";
    case TheoremTag::ExampleFamily: return "ExampleFamily";
  }
  return "?";
}

enum class Conclusion {
  FPositiveAllSmallH,
  NotFPositiveSmallH,
  StrictlyFPositiveEventually,
  NotFPositiveEventually,
  Boundary,
  SlopeHolds,
  SlopeFails,
  InsideBridgeInterior,
  OnBridgeBoundary,
  OutsideBridge,
  FibresUnstable,
  NoConclusion,
  ExampleValidated,
  ExampleRefuted,
  Undetermined,
};

inline const char* to_string(Conclusion c) {
  switch (c) {
    case Conclusion::FPositiveAllSmallH: return "FPositiveAllSmallH";
    case Conclusion::NotFPositiveSmallH: return "NotFPositiveSmallH";
    case Conclusion::StrictlyFPositiveEventually: return "StrictlyFPositiveEventually";
    case Conclusion::NotFPositiveEventually: return "NotFPositiveEventually";
    case Conclusion::Boundary: return "Boundary";
    case Conclusion::SlopeHolds: return "SlopeHolds";
    case Conclusion::SlopeFails: return "SlopeFails";
    case Conclusion::InsideBridgeInterior: return "InsideBridgeInterior";
    case Conclusion::OnBridgeBoundary: return "OnBridgeBoundary";
    case Conclusion::OutsideBridge: return "OutsideBridge";
    case Conclusion::FibresUnstable: return "FibresUnstable";
    case Conclusion::NoConclusion: return "NoConclusion";
    case Conclusion::ExampleValidated: return "ExampleValidated";
    case Conclusion::ExampleRefuted: return "ExampleRefuted";
    case Conclusion::Undetermined: return "Undetermined";
  }
  return "?";
}

struct Witness {
  std::string name;
  Rat value;
};

struct VerdictReport {
  TheoremTag theorem;
  std::vector<std::pair<std::string, bool>> hypotheses;
  Conclusion conclusion = Conclusion::Undetermined;
  std::vector<Witness> witnesses;
  std::vector<std::pair<std::string, bool>> flags;
  std::vector<std::string> notes;

  explicit VerdictReport(TheoremTag tag, std::vector<std::pair<std::string, bool>> hyps = {})
      : theorem(tag), hypotheses(std::move(hyps)) {}

  bool hypotheses_hold() const {
    return std::all_of(hypotheses.begin(), hypotheses.end(), [](const auto& h) { return h.second; });
  }

  const Rat* witness(const std::string& name) const {
    for (const auto& w : witnesses)
      if (w.name == name) return &w.value;
    return nullptr;
  }

  bool flag(const std::string& name) const {
    for (const auto& f : flags)
      if (f.first == name) return f.second;
    return false;
  }

  /// Enforces the gate: no conclusion survives a false hypothesis.
  VerdictReport& finalize() {
    if (!hypotheses_hold()) {
      conclusion = Conclusion::Undetermined;
      for (const auto& h : hypotheses)
        if (!h.second) notes.push_back("hypothesis failed: " + h.first);
    }
    return *this;
  }
};

/// Margin of O_X(h) / h^{r-c-1} as a polynomial in h, valid for h >= k_J - r + 1
/// (where every truncated binomial agrees with its polynomial). Sampled at
/// h = k_J .. k_J + r - c + 1, one sample beyond the maximal degree r - c.
inline UniPoly stable_margin_polynomial(const RelativeCI& x) {
  const std::int64_t start = x.k_total();
  std::vector<Sample> samples;
  for (std::int64_t h = start; h <= start + x.dim() + 1; ++h)
    samples.push_back({h, Rat(normalized_margin(x, h))});
  UniPoly poly = interpolate(samples);
  if (poly.degree() > x.dim())
    throw IntegrityError("stable margin polynomial has degree " + std::to_string(poly.degree()) +
                         " > r - c");
  return poly;
}

/// Sign of the margin is constant for every h >= this value.
inline BigInt stable_sign_threshold(const RelativeCI& x, const UniPoly& poly) {
  return std::max(BigInt(x.k_total()), ceil_of(cauchy_root_bound(poly)));
}

inline VerdictReport small_h_verdict(const RelativeCI& x) {
  VerdictReport out{TheoremTag::SmallH, {{"k_i >= 2", true}}};
  const BigInt a = alpha(x);
  const Rat bound = Rat(x.c()) * x.bundle().slope();
  const Rat ratio_sum = x.twist_ratio_sum();
  out.witnesses = {{"alpha", Rat(a)}, {"c_mu", bound}, {"sum_y_over_k", ratio_sum}};

  bool margins_nonnegative = true;
  for (std::int64_t h = 1; h < x.k_min(); ++h) {
    const auto report = e_margin(x, h);
    out.witnesses.push_back({"margin_h" + std::to_string(h), Rat(report.e_cleared)});
    margins_nonnegative = margins_nonnegative && report.sign >= 0;
  }
  const bool by_alpha = a >= 0;
  const bool by_ratio = ratio_sum <= bound;
  if (by_alpha != by_ratio || by_alpha != margins_nonnegative)
    throw IntegrityError("small-h criteria disagree (alpha, ratio, margins)");
  out.conclusion = by_alpha ? Conclusion::FPositiveAllSmallH : Conclusion::NotFPositiveSmallH;
  return std::move(out.finalize());
}

inline VerdictReport asymptotic_verdict(const RelativeCI& x) {
  VerdictReport out{TheoremTag::Asymptotic, {{"k_i >= 2", true}}};
  const BigInt a = alpha(x);
  out.witnesses.push_back({"alpha", Rat(a)});
  const UniPoly poly = stable_margin_polynomial(x);
  out.witnesses.push_back({"stable_degree", Rat(poly.degree())});
  out.witnesses.push_back({"stable_leading_coefficient", poly.leading()});
  const int eventual = sign(poly.leading());
  out.witnesses.push_back({"computed_eventual_sign", Rat(eventual)});

  if (a > 0) {
    out.conclusion = Conclusion::StrictlyFPositiveEventually;
  } else if (a < 0) {
    out.conclusion = Conclusion::NotFPositiveEventually;
  } else {
    out.conclusion = Conclusion::Boundary;
    out.witnesses.push_back(
        {"next_coefficient", poly.coefficient(static_cast<std::size_t>(x.dim() - 1))});
  }
  if (a != 0 && eventual != sign(a))
    out.notes.push_back("computed eventual sign of the margin (" + std::to_string(eventual) +
                        ") differs from sign(alpha)");
  return std::move(out.finalize());
}

inline VerdictReport slope_verdict(const RelativeCI& x) {
  VerdictReport out{TheoremTag::Slope};
  const bool balanced = x.balanced();
  const std::int64_t k = x.k().front();
  out.hypotheses = {{"balanced", balanced},
                    {"k > 1", k > 1},
                    {"ck > r", balanced && x.c() * k > x.r()}};
  if (!out.hypotheses_hold()) return std::move(out.finalize());

  const BigInt kf = kf_top(x);
  const auto margin = slope_margin(x);
  const Rat mu = x.bundle().slope();
  const Rat criterion(x.y_total(), x.c() * k);
  out.witnesses = {{"alpha", Rat(alpha(x))},
                   {"kf_top", Rat(kf)},
                   {"slope_margin", Rat(margin.direct_cleared)},
                   {"mu", mu},
                   {"y_J_over_ck", criterion}};
  const bool p1 = kf >= 0;
  const bool p2 = margin.direct_cleared >= 0;
  const bool p3 = mu >= criterion;
  if (p1 != p2 || p2 != p3) throw IntegrityError("slope predicates disagree");
  out.conclusion = p3 ? Conclusion::SlopeHolds : Conclusion::SlopeFails;
  return std::move(out.finalize());
}

inline VerdictReport cone_membership_verdict(const RelativeCI& x) {
  VerdictReport out{TheoremTag::ConeMembership, {{"k_i >= 2", true}}};
  const auto cls = ci_class(x);
  const auto& bundle = x.bundle();
  out.witnesses = {{"class_p", cls.p},
                   {"class_q", cls.q},
                   {"bridge_threshold", cone_threshold(bundle, x.c(), ConeKind::Bridge)}};
  switch (bridge_membership(bundle, cls)) {
    case BridgeMembership::Interior: out.conclusion = Conclusion::InsideBridgeInterior; break;
    case BridgeMembership::Boundary: out.conclusion = Conclusion::OnBridgeBoundary; break;
    case BridgeMembership::Outside: out.conclusion = Conclusion::OutsideBridge; break;
  }
  if (bundle.has_hn()) {
    out.witnesses.push_back({"nef_threshold", cone_threshold(bundle, x.c(), ConeKind::Nef)});
    out.witnesses.push_back({"pseff_threshold", cone_threshold(bundle, x.c(), ConeKind::Pseff)});
    out.notes.push_back(std::string("region: ") + to_string(classify(bundle, cls).region));
  } else {
    out.notes.push_back("virtual slopes unavailable: Bridge membership only");
  }
  return std::move(out.finalize());
}

inline VerdictReport instability_verdict(const RelativeCI& x) {
  VerdictReport out{TheoremTag::Instability, {{"k_i >= 2", true}}};
  const Rat bound = Rat(x.c()) * x.bundle().slope();
  const Rat ratio_sum = x.twist_ratio_sum();
  out.witnesses = {{"sum_y_over_k", ratio_sum}, {"c_mu", bound}};
  const bool fires = ratio_sum > bound;
  const bool dualizing = fires && x.balanced() && x.c() * x.k().front() > x.r();
  out.flags = {{"unstable_small_h", fires}, {"unstable_large_h", fires}, {"unstable_dualizing", dualizing}};
  out.conclusion = fires ? Conclusion::FibresUnstable : Conclusion::NoConclusion;
  return std::move(out.finalize());
}

enum class Orientation { AsWritten, Swapped };

struct ExampleBuild {
  BundleOverCurve bundle;
  RelativeCI ci;
  VerdictReport report;
};

/// E = O(a)^{r-1} ⊕ O(a-1) over P^1 with c equal hypersurfaces. AsWritten
/// takes k = m(ra-1), y = m(r+1); Swapped exchanges the two. The report says
/// which of the family's numerical requirements actually hold.
inline ExampleBuild build_example(std::int64_t a, std::int64_t r, std::int64_t c, std::int64_t m,
                                  Orientation orientation) {
  if (a < 1) throw InvalidInput("example: a must be >= 1");
  if (r < 3) throw InvalidInput("example: r must be >= 3");
  if (c < 1 || c > r - 2) throw InvalidInput("example: c must lie in 1..r-2");
  if (m < 1) throw InvalidInput("example: m must be >= 1");

  BundleOverCurve bundle(r, r * a - 1, 0, std::vector<HnBlock>{{r - 1, a * (r - 1)}, {1, a - 1}});
  std::int64_t k = m * (r * a - 1);
  std::int64_t y = m * (r + 1);
  if (orientation == Orientation::Swapped) std::swap(k, y);
  RelativeCI ci(bundle, std::vector<std::int64_t>(static_cast<std::size_t>(c), k),
                std::vector<std::int64_t>(static_cast<std::size_t>(c), y));

  VerdictReport report{TheoremTag::ExampleFamily, {{"a >= 1, r >= 3, 1 <= c <= r-2, m >= 1", true}}};
  const Rat ratio(y, k);
  const Rat mu1 = bundle.max_slope();
  const Rat mu2 = bundle.hn()->at(1).slope();
  const Rat bound = Rat(c) * bundle.slope();
  report.witnesses = {{"k", Rat(k)},   {"y", Rat(y)},   {"y_over_k", ratio},
                      {"mu_1", mu1},   {"mu_2", mu2},   {"mu", bundle.slope()},
                      {"sum_y_over_k", ci.twist_ratio_sum()}, {"c_mu", bound}};
  const bool effective = ratio <= mu1;
  const bool base_locus = ratio > mu2;
  const bool unstable = ci.twist_ratio_sum() > bound;
  report.flags = {{"effective", effective}, {"base_locus", base_locus}, {"instability_condition", unstable}};
  if (!effective) report.notes.push_back("effectivity fails: y/k > mu_1, the linear system is empty");
  if (!base_locus) report.notes.push_back("base-locus condition fails: y/k <= mu_2");
  if (!unstable) report.notes.push_back("instability condition fails: sum y/k <= c mu");
  report.conclusion =
      effective && base_locus && unstable ? Conclusion::ExampleValidated : Conclusion::ExampleRefuted;
  report.finalize();
  return ExampleBuild{bundle, ci, std::move(report)};
}

enum class SweepBand { SmallH, Unlabeled, Stable };

inline const char* to_string(SweepBand band) {
  switch (band) {
    case SweepBand::SmallH: return "small_h";
    case SweepBand::Unlabeled: return "unlabeled";
    case SweepBand::Stable: return "stable";
  }
  return "?";
}

struct SweepRow {
  PositivityReport margin;
  SweepBand band;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  UniPoly stable_polynomial;  // normalized margin for large h
  BigInt h0;                  // sign is constant for h >= h0
  int eventual_sign;
};

inline SweepResult h_sweep(const RelativeCI& x, std::int64_t h_max) {
  if (h_max < 1) throw InvalidInput("h_sweep needs h_max >= 1");
  SweepResult out;
  out.stable_polynomial = stable_margin_polynomial(x);
  out.h0 = stable_sign_threshold(x, out.stable_polynomial);
  out.eventual_sign = sign(out.stable_polynomial.leading());
  for (std::int64_t h = 1; h <= h_max; ++h) {
    SweepBand band = SweepBand::Unlabeled;
    if (h < x.k_min()) band = SweepBand::SmallH;
    else if (BigInt(h) >= out.h0) band = SweepBand::Stable;
    out.rows.push_back({e_margin(x, h), band});
  }
  return out;
}

}  // namespace relci
