#pragma once

/// \file
/// Numerical invariants of a relative complete intersection X ⊂ P(E) and
/// the f-positivity margins of O_X(h) and of the relative canonical sheaf.
///
/// Notation: r = rank E, d = deg E, c = codim, n = r - c = dim X,
/// P = ∏ k_i, k_J = Σ k_i, y_J = Σ y_i.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "relci/bundle.hpp"
#include "relci/errors.hpp"
#include "relci/exact_math.hpp"
#include "relci/relative_ci.hpp"

namespace relci {

/// H_X^{r-c} = P·d - Σ_i (∏_{j≠i} k_j)·y_i.
inline BigInt h_top(const RelativeCI& x) {
  BigInt value = x.k_product() * x.d();
  for (std::size_t i = 0; i < x.k().size(); ++i) value -= x.k_product_except(i) * x.y()[i];
  return value;
}

/// H_F^{r-c-1} = ∏ k_i.
inline BigInt fibre_deg(const RelativeCI& x) { return x.k_product(); }

/// α = c·P·d - r·Σ_i (∏_{j≠i} k_j)·y_i. Same sign as c·mu - Σ y_i/k_i.
inline BigInt alpha(const RelativeCI& x) {
  BigInt twist = 0;
  for (std::size_t i = 0; i < x.k().size(); ++i) twist += x.k_product_except(i) * x.y()[i];
  return BigInt(x.c()) * x.k_product() * x.d() - twist * x.r();
}

namespace detail {

inline BigInt signed_term(std::size_t subset_size, BigInt value) {
  return subset_size % 2 == 0 ? value : BigInt(-value);
}

inline BigInt sym_rank(const RelativeCI& x, std::int64_t a) {
  return binom_trunc(a + x.r() - 1, x.r() - 1);
}

}  // namespace detail

/// Auto takes the binomial shortcut when X is balanced; Subsets always walks
/// every I ⊆ {1..c}.
enum class SumPath { Auto, Subsets };

/// rank f_*O_X(h) = h^0(F, O_F(h)) = Σ_I (-1)^{|I|} C(h - k_I + r - 1, r - 1).
inline BigInt rank_pf(const RelativeCI& x, std::int64_t h, SumPath path = SumPath::Auto) {
  if (h < 0) throw InvalidInput("rank_pf needs h >= 0");
  const auto c = static_cast<std::size_t>(x.c());
  BigInt total = 0;
  if (path == SumPath::Auto && x.balanced()) {
    const std::int64_t k = x.k().front();
    for (std::size_t i = 0; i <= c; ++i)
      total += detail::signed_term(
          i, binom_trunc(static_cast<std::int64_t>(c), static_cast<std::int64_t>(i)) *
                 detail::sym_rank(x, h - static_cast<std::int64_t>(i) * k));
    return total;
  }
  for (std::size_t i = 0; i <= c; ++i)
    for (const auto& subset : subsets_of_size(c, i))
      total += detail::signed_term(i, detail::sym_rank(x, h - subset.sum(x.k())));
  return total;
}

/// deg f_*O_X(h) = Σ_I (-1)^{|I|} C(h - k_I + r - 1, r - 1)·((h - k_I)·d + y_I·r)/r.
/// The division by r always cancels; a remainder raises IntegrityError.
inline BigInt deg_pf(const RelativeCI& x, std::int64_t h, SumPath path = SumPath::Auto) {
  if (h < 0) throw InvalidInput("deg_pf needs h >= 0");
  const auto c = static_cast<std::size_t>(x.c());
  const std::int64_t r = x.r();
  const std::int64_t d = x.d();
  BigInt scaled = 0;  // r · deg
  if (path == SumPath::Auto && x.balanced()) {
    // Σ_{|I|=i} y_I = C(c-1, i-1)·y_J.
    const std::int64_t k = x.k().front();
    const auto cc = static_cast<std::int64_t>(c);
    for (std::int64_t i = 0; i <= cc; ++i) {
      const std::int64_t a = h - i * k;
      BigInt weight = binom_trunc(cc, i) * BigInt(a) * d;
      if (i > 0) weight += binom_trunc(cc - 1, i - 1) * BigInt(x.y_total()) * r;
      scaled += detail::signed_term(static_cast<std::size_t>(i), detail::sym_rank(x, a) * weight);
    }
  } else {
    for (std::size_t i = 0; i <= c; ++i)
      for (const auto& subset : subsets_of_size(c, i)) {
        const std::int64_t a = h - subset.sum(x.k());
        const BigInt weight = BigInt(a) * d + BigInt(subset.sum(x.y())) * r;
        scaled += detail::signed_term(i, detail::sym_rank(x, a) * weight);
      }
  }
  if (scaled % r != 0)
    throw IntegrityError("deg f_*O_X(" + std::to_string(h) + ") is not integral: " +
                         scaled.str() + "/" + std::to_string(r));
  return scaled / r;
}

struct PushforwardSummary {
  std::int64_t h;
  BigInt rank;
  BigInt degree;
};

inline PushforwardSummary pushforward(const RelativeCI& x, std::int64_t h,
                                       SumPath path = SumPath::Auto) {
  return {h, rank_pf(x, h, path), deg_pf(x, h, path)};
}

struct PositivityReport {
  std::int64_t h;
  /// h^n·H_X^n·rank - n·h^{n-1}·H_F^{n-1}·deg, with n = r - c.
  BigInt e_cleared;
  /// e_cleared / rank; absent when rank = 0.
  std::optional<Rat> e_rational;
  int sign;
};

/// f-positivity margin of L = O_X(h).
inline PositivityReport e_margin(const RelativeCI& x, std::int64_t h, SumPath path = SumPath::Auto) {
  if (h < 1) throw InvalidInput("e_margin needs h >= 1");
  const std::int64_t n = x.dim();
  const auto pf = pushforward(x, h, path);
  const BigInt e = ipow(BigInt(h), n) * h_top(x) * pf.rank -
                   BigInt(n) * ipow(BigInt(h), n - 1) * fibre_deg(x) * pf.degree;
  PositivityReport out{h, e, std::nullopt, sign(e)};
  if (pf.rank != 0) {
    out.e_rational = Rat(e, pf.rank);
    if (sign(*out.e_rational) != out.sign) throw IntegrityError("sign(e_rational) != sign(e_cleared)");
  }
  return out;
}

/// e_cleared / h^{r-c-1}. Always an integer because e_cleared carries that
/// power of h explicitly.
inline BigInt normalized_margin(const RelativeCI& x, std::int64_t h, SumPath path = SumPath::Auto) {
  return e_margin(x, h, path).e_cleared / ipow(BigInt(h), x.dim() - 1);
}

/// K_f ≡ a·H_X - b·F.
struct CanonicalClass {
  std::int64_t a;  // k_J - r
  std::int64_t b;  // y_J - d
  /// k_J > r: K_F is very ample, fibres of general type.
  bool general_type_fibres;
};

inline CanonicalClass canonical_coeffs(const RelativeCI& x) {
  const std::int64_t a = x.k_total() - x.r();
  return {a, x.y_total() - x.d(), a > 0};
}

/// K_f^{r-c} = a^n·H_X^n - n·a^{n-1}·b·H_F^{n-1}, using F·F = 0.
inline BigInt kf_top(const RelativeCI& x) {
  const auto kc = canonical_coeffs(x);
  const std::int64_t n = x.dim();
  return ipow(BigInt(kc.a), n) * h_top(x) -
         BigInt(n) * ipow(BigInt(kc.a), n - 1) * kc.b * fibre_deg(x);
}

struct SlopeMarginReport {
  std::int64_t h;                 // k_J - r
  BigInt kf_top;                  // K_f^n
  BigInt kf_fibre_degree;         // K_F^{n-1} = (k_J - r)^{n-1}·P
  BigInt canonical_rank;          // h^0(K_F) = rank f_*ω_f
  BigInt canonical_degree;        // deg f_*ω_f
  BigInt direct_cleared;          // K_f^n·rank - n·K_F^{n-1}·deg f_*ω_f
  PositivityReport via_twist;     // e_margin(X, k_J - r)
  int sign;
};

/// Canonical slope margin, computed directly from K_f and cross-checked
/// against the margin of O_X(k_J - r), to which it is equal because twisting
/// by a pullback from B does not change the cleared margin.
inline SlopeMarginReport slope_margin(const RelativeCI& x) {
  const auto kc = canonical_coeffs(x);
  if (!kc.general_type_fibres)
    throw HypothesisViolation("k_J > r", "slope margin needs k_J > r, got k_J = " +
                                             std::to_string(x.k_total()) +
                                             ", r = " + std::to_string(x.r()));
  const std::int64_t n = x.dim();
  const std::int64_t h = kc.a;
  SlopeMarginReport out{h, kf_top(x), ipow(BigInt(kc.a), n - 1) * fibre_deg(x), rank_pf(x, h), 0, 0,
                        e_margin(x, h), 0};
  out.canonical_degree = deg_pf(x, h) - BigInt(kc.b) * out.canonical_rank;
  out.direct_cleared =
      out.kf_top * out.canonical_rank - BigInt(n) * out.kf_fibre_degree * out.canonical_degree;
  if (out.direct_cleared != out.via_twist.e_cleared)
    throw IntegrityError("canonical margin " + out.direct_cleared.str() +
                         " differs from e_margin(k_J - r) = " + out.via_twist.e_cleared.str());
  out.sign = sign(out.direct_cleared);
  return out;
}

/// Balanced closed form of the margin of O_X(h):
///
///   α·[ h·Σ_{i=0}^{c} (-1)^i C(c,i) C(h-ik+r-1, r-1)
///       - k(r-c)·Σ_{j=0}^{c-1} (-1)^j C(c-1,j) C(h-(j+1)k+r-1, r-1) ]
///
/// which equals r·e_cleared / h^{r-c-1}.
inline BigInt balanced_margin(const RelativeCI& x, std::int64_t h) {
  if (!x.balanced()) throw InvalidInput("balanced_margin needs all k_i equal");
  if (h < 1) throw InvalidInput("balanced_margin needs h >= 1");
  const std::int64_t c = x.c();
  const std::int64_t k = x.k().front();
  BigInt full = 0;
  for (std::int64_t i = 0; i <= c; ++i)
    full += detail::signed_term(static_cast<std::size_t>(i),
                                binom_trunc(c, i) * detail::sym_rank(x, h - i * k));
  BigInt shifted = 0;
  for (std::int64_t j = 0; j <= c - 1; ++j)
    shifted += detail::signed_term(static_cast<std::size_t>(j),
                                   binom_trunc(c - 1, j) * detail::sym_rank(x, h - (j + 1) * k));
  return alpha(x) * (BigInt(h) * full - BigInt(k) * x.dim() * shifted);
}

struct EnokizonoReport {
  BigInt alpha_prime;   // c·d·k - r·y_J
  BigInt kf2_formula;   // ((r-2)k - r)(k-1)k^{r-3}·α'
  Rat degpf_formula;    // ((3r-5)k - 3r + 1)(k-1)k^{r-3}·α' / 24
  BigInt kf2_direct;
  BigInt degpf_direct;
  bool kf2_matches;
  bool degpf_matches;
  /// K_f²·((3r-5)k - 3r + 1) = 24((r-2)k - r)·deg f_*ω_f on the direct values.
  bool ratio_holds;
};

/// Closed forms for K_f² and deg f_*ω_f of a balanced surface (c = r - 2).
inline EnokizonoReport enokizono(const RelativeCI& x) {
  if (!x.balanced()) throw HypothesisViolation("balanced", "Enokizono formulas need balanced X");
  if (x.c() != x.r() - 2) throw HypothesisViolation("c = r-2", "Enokizono formulas need X a surface");
  const std::int64_t r = x.r();
  const std::int64_t k = x.k().front();
  if (x.c() * k <= r) throw HypothesisViolation("ck > r", "Enokizono formulas need ck > r");

  EnokizonoReport out;
  out.alpha_prime = BigInt(x.c()) * x.d() * k - BigInt(r) * x.y_total();
  const BigInt common = BigInt(k - 1) * ipow(BigInt(k), r - 3) * out.alpha_prime;
  out.kf2_formula = BigInt((r - 2) * k - r) * common;
  out.degpf_formula = Rat(BigInt((3 * r - 5) * k - 3 * r + 1) * common, 24);

  const auto slope = slope_margin(x);
  out.kf2_direct = slope.kf_top;
  out.degpf_direct = slope.canonical_degree;
  out.kf2_matches = out.kf2_formula == out.kf2_direct;
  out.degpf_matches = out.degpf_formula == Rat(out.degpf_direct);
  out.ratio_holds = out.kf2_direct * ((3 * r - 5) * k - 3 * r + 1) ==
                    BigInt(24) * ((r - 2) * k - r) * out.degpf_direct;
  return out;
}

/// Effectivity warnings: if y_i/k_i > mu_1 the system |k_i H - y_i Σ| is empty.
inline std::vector<std::string> effectivity_warnings(const RelativeCI& x) {
  std::vector<std::string> warnings;
  if (!x.bundle().has_hn()) return warnings;
  const Rat mu1 = x.bundle().max_slope();
  for (std::size_t i = 0; i < x.k().size(); ++i) {
    const Rat ratio(x.y()[i], x.k()[i]);
    if (ratio > mu1)
      warnings.push_back("X_" + std::to_string(i + 1) + ": y/k = " + to_string(ratio) +
                         " > mu_1 = " + to_string(mu1) + ", linear system is empty");
  }
  return warnings;
}

}  // namespace relci
