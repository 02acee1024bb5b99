#pragma once

/// \file
/// Cones of codimension-c cycles in N^c(P(E)) for a bundle E over a curve.
///
/// N^c(P) is two-dimensional with basis H^c, H^{c-1}Σ. Every cone here is
/// spanned by H^{c-1}Σ and a ray H^c - t·H^{c-1}Σ, so a cone is fully
/// described by its threshold t: a class p·H^c + q·H^{c-1}Σ with p > 0 lies
/// in the cone iff -q/p <= t.

#include <cstdint>
#include <string>
#include <vector>

#include "relci/bundle.hpp"
#include "relci/errors.hpp"
#include "relci/exact_math.hpp"
#include "relci/relative_ci.hpp"

namespace relci {

/// The HN slopes, each repeated by its block rank, in NON-INCREASING order:
/// element 0 is mu_1. Sums to deg E.
inline std::vector<Rat> virtual_slopes(const BundleOverCurve& bundle) {
  std::vector<Rat> out;
  out.reserve(static_cast<std::size_t>(bundle.rank()));
  for (const auto& block : bundle.hn_or_throw())
    for (std::int64_t i = 0; i < block.rank; ++i) out.push_back(block.slope());
  return out;
}

/// Point p·H^c + q·H^{c-1}Σ of N^c(P).
struct CycleClass {
  std::int64_t codim;
  Rat p;
  Rat q;

  friend bool operator==(const CycleClass&, const CycleClass&) = default;
};

enum class ConeKind { Pseff, Nef, Bridge };

inline const char* to_string(ConeKind kind) {
  switch (kind) {
    case ConeKind::Pseff: return "Pseff";
    case ConeKind::Nef: return "Nef";
    case ConeKind::Bridge: return "Bridge";
  }
  return "?";
}

struct ConeDescription {
  std::int64_t codim;
  CycleClass ray1;  // always H^{c-1}Σ
  CycleClass ray2;  // H^c - threshold·H^{c-1}Σ
  ConeKind kind;

  Rat threshold() const { return -ray2.q; }
};

inline void check_codim(const BundleOverCurve& bundle, std::int64_t c) {
  if (c < 1 || c > bundle.rank() - 1)
    throw InvalidInput("codimension " + std::to_string(c) + " outside 1.." +
                       std::to_string(bundle.rank() - 1));
}

/// Pseff: sum of the c largest virtual slopes. Nef: sum of the c smallest.
/// Bridge: c·mu, which needs no HN data.
inline Rat cone_threshold(const BundleOverCurve& bundle, std::int64_t c, ConeKind kind) {
  check_codim(bundle, c);
  if (kind == ConeKind::Bridge) return Rat(c) * bundle.slope();
  const auto slopes = virtual_slopes(bundle);
  Rat sum = 0;
  const auto cc = static_cast<std::size_t>(c);
  if (kind == ConeKind::Pseff) {
    for (std::size_t i = 0; i < cc; ++i) sum += slopes[i];
  } else {
    for (std::size_t i = slopes.size() - cc; i < slopes.size(); ++i) sum += slopes[i];
  }
  return sum;
}

inline ConeDescription cone(const BundleOverCurve& bundle, std::int64_t c, ConeKind kind) {
  const Rat t = cone_threshold(bundle, c, kind);
  return ConeDescription{c, CycleClass{c, 0, 1}, CycleClass{c, 1, -t}, kind};
}

struct DivisorPositivity {
  bool pseff;
  bool nef;
};

/// Pseudo-effectivity and nefness of k·H - m·Σ (Miyaoka-Nakayama):
/// pseff iff m/k <= mu_1, nef iff m/k <= mu_l.
inline DivisorPositivity mn_divisor_test(const BundleOverCurve& bundle, std::int64_t k,
                                         std::int64_t m) {
  if (k <= 0) throw InvalidInput("divisor test needs k >= 1");
  const Rat ratio(m, k);
  return {ratio <= bundle.max_slope(), ratio <= bundle.min_slope()};
}

/// Class of ∏(k_i H - y_i Σ) using Σ² = 0.
inline CycleClass ci_class(const RelativeCI& x) {
  BigInt q = 0;
  for (std::size_t i = 0; i < x.k().size(); ++i) q -= x.k_product_except(i) * x.y()[i];
  return CycleClass{x.c(), Rat(x.k_product()), Rat(q)};
}

enum class ConeRegion {
  InsideNef,
  NefBoundary,
  InsideBridgeOutsideNef,
  BridgeBoundary,
  InsidePseffOutsideBridge,
  PseffBoundary,
  OutsidePseff,
};

inline const char* to_string(ConeRegion region) {
  switch (region) {
    case ConeRegion::InsideNef: return "InsideNef";
    case ConeRegion::NefBoundary: return "NefBoundary";
    case ConeRegion::InsideBridgeOutsideNef: return "InsideBridgeOutsideNef";
    case ConeRegion::BridgeBoundary: return "BridgeBoundary";
    case ConeRegion::InsidePseffOutsideBridge: return "InsidePseffOutsideBridge";
    case ConeRegion::PseffBoundary: return "PseffBoundary";
    case ConeRegion::OutsidePseff: return "OutsidePseff";
  }
  return "?";
}

struct Classification {
  ConeRegion region;
  // When cones coincide a class can sit on several boundaries at once.
  bool on_nef_boundary = false;
  bool on_bridge_boundary = false;
  bool on_pseff_boundary = false;
  Rat ratio;  // -q/p, or 0 when p = 0

  bool in_bridge() const {
    return region == ConeRegion::InsideNef || region == ConeRegion::NefBoundary ||
           region == ConeRegion::InsideBridgeOutsideNef || region == ConeRegion::BridgeBoundary;
  }
  bool strictly_outside_bridge() const { return !in_bridge(); }
};

inline void check_candidate(const BundleOverCurve& bundle, const CycleClass& cls) {
  check_codim(bundle, cls.codim);
  if (cls.p < 0) throw InvalidInput("class with negative H^c coefficient is not a candidate");
}

/// Position of a class relative to Nef ⊆ Bridge ⊆ Pseff. Needs HN data.
inline Classification classify(const BundleOverCurve& bundle, const CycleClass& cls) {
  check_candidate(bundle, cls);
  const Rat nef = cone_threshold(bundle, cls.codim, ConeKind::Nef);
  const Rat bridge = cone_threshold(bundle, cls.codim, ConeKind::Bridge);
  const Rat pseff = cone_threshold(bundle, cls.codim, ConeKind::Pseff);
  if (cls.p == 0) {
    // The shared ray H^{c-1}Σ (or the origin).
    return Classification{ConeRegion::NefBoundary, true, true, true, Rat(0)};
  }
  const Rat s = -cls.q / cls.p;
  Classification out{ConeRegion::OutsidePseff, s == nef, s == bridge, s == pseff, s};
  if (s < nef) out.region = ConeRegion::InsideNef;
  else if (s == nef) out.region = ConeRegion::NefBoundary;
  else if (s < bridge) out.region = ConeRegion::InsideBridgeOutsideNef;
  else if (s == bridge) out.region = ConeRegion::BridgeBoundary;
  else if (s < pseff) out.region = ConeRegion::InsidePseffOutsideBridge;
  else if (s == pseff) out.region = ConeRegion::PseffBoundary;
  return out;
}

enum class BridgeMembership { Interior, Boundary, Outside };

inline const char* to_string(BridgeMembership m) {
  switch (m) {
    case BridgeMembership::Interior: return "Interior";
    case BridgeMembership::Boundary: return "Boundary";
    case BridgeMembership::Outside: return "Outside";
  }
  return "?";
}

/// Membership in the intermediate cone only; works without HN data.
/// The shared ray H^{c-1}Σ counts as boundary.
inline BridgeMembership bridge_membership(const BundleOverCurve& bundle, const CycleClass& cls) {
  check_candidate(bundle, cls);
  if (cls.p == 0) return BridgeMembership::Boundary;
  const Rat s = -cls.q / cls.p;
  const Rat t = cone_threshold(bundle, cls.codim, ConeKind::Bridge);
  if (s < t) return BridgeMembership::Interior;
  if (s == t) return BridgeMembership::Boundary;
  return BridgeMembership::Outside;
}

}  // namespace relci
