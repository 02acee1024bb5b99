#pragma once

/// \file
/// Brute-force computations that share no code path with the closed forms in
/// ci_invariants.hpp. They exist to validate those closed forms.

#include <cstdint>
#include <string>
#include <vector>

#include "relci/bundle.hpp"
#include "relci/bundle_cones.hpp"
#include "relci/ci_invariants.hpp"
#include "relci/errors.hpp"
#include "relci/exact_math.hpp"
#include "relci/relative_ci.hpp"

namespace relci {

/// Enumeration caps. Multiset enumeration grows like C(a + r - 1, r - 1).
struct OracleLimits {
  std::int64_t max_rank = 5;
  std::int64_t max_power = 12;
};

/// E = O(a_1) ⊕ ... ⊕ O(a_r).
struct SplitBundle {
  std::vector<std::int64_t> line_degrees;

  std::int64_t rank() const { return static_cast<std::int64_t>(line_degrees.size()); }
  std::int64_t degree() const {
    std::int64_t d = 0;
    for (auto a : line_degrees) d += a;
    return d;
  }
  BundleOverCurve bundle(std::int64_t base_genus = 0) const {
    return BundleOverCurve::split(line_degrees, base_genus);
  }
};

/// Sym^a E of a split bundle is ⊕ O(a_{i_1} + ... + a_{i_a}) over multisets
/// {i_1 <= ... <= i_a}. Caches, per power, the number of multisets and the
/// total degree.
class SymPowerTable {
 public:
  SymPowerTable(const SplitBundle& bundle, std::int64_t max_power, OracleLimits limits = {}) {
    if (bundle.rank() < 1) throw InvalidInput("split bundle needs at least one summand");
    if (bundle.rank() > limits.max_rank || max_power > limits.max_power)
      throw InvalidInput("oracle enumeration beyond configured caps (rank " +
                         std::to_string(limits.max_rank) + ", power " +
                         std::to_string(limits.max_power) + ")");
    if (max_power < 0) max_power = 0;
    counts_.assign(static_cast<std::size_t>(max_power + 1), 0);
    totals_.assign(static_cast<std::size_t>(max_power + 1), 0);
    for (std::int64_t a = 0; a <= max_power; ++a) enumerate(bundle.line_degrees, a);
  }

  std::int64_t max_power() const { return static_cast<std::int64_t>(counts_.size()) - 1; }
  const BigInt& multiset_count(std::int64_t a) const { return counts_.at(static_cast<std::size_t>(a)); }
  const BigInt& degree_total(std::int64_t a) const { return totals_.at(static_cast<std::size_t>(a)); }

 private:
  void enumerate(const std::vector<std::int64_t>& degrees, std::int64_t a) {
    const std::size_t r = degrees.size();
    const auto slot = static_cast<std::size_t>(a);
    std::vector<std::size_t> pick(static_cast<std::size_t>(a), 0);  // nondecreasing
    while (true) {
      std::int64_t deg = 0;
      for (auto i : pick) deg += degrees[i];
      counts_[slot] += 1;
      totals_[slot] += deg;
      // next nondecreasing sequence
      std::size_t pos = pick.size();
      while (pos > 0 && pick[pos - 1] == r - 1) --pos;
      if (pos == 0) break;
      const std::size_t v = pick[pos - 1] + 1;
      for (std::size_t j = pos - 1; j < pick.size(); ++j) pick[j] = v;
    }
  }

  std::vector<BigInt> counts_;
  std::vector<BigInt> totals_;
};

/// deg(Sym^a E ⊗ O(-M)) with deg M = twist, by exhaustive enumeration.
/// Sym^a E = 0 for a < 0.
inline BigInt sym_degree_bruteforce(const SymPowerTable& table, std::int64_t a,
                                    std::int64_t twist) {
  if (a < 0) return 0;
  return table.degree_total(a) - table.multiset_count(a) * twist;
}

inline BigInt sym_degree_bruteforce(const SplitBundle& bundle, std::int64_t a, std::int64_t twist,
                                    OracleLimits limits = {}) {
  if (a < 0) return 0;
  return sym_degree_bruteforce(SymPowerTable(bundle, a, limits), a, twist);
}

/// C(a+r-1, r-1)·(a·d - twist·r)/r: the closed form the enumeration checks.
inline Rat sym_degree_closed_form(std::int64_t r, std::int64_t d, std::int64_t a,
                                  std::int64_t twist) {
  return Rat(binom_trunc(a + r - 1, r - 1) * (BigInt(a) * d - BigInt(twist) * r), r);
}

inline void check_split_matches(const SplitBundle& split, const RelativeCI& x) {
  if (split.rank() != x.r() || split.degree() != x.d())
    throw InvalidInput("split bundle (rank " + std::to_string(split.rank()) + ", degree " +
                       std::to_string(split.degree()) + ") does not match the instance bundle");
}

/// deg f_*O_X(h) as the alternating sum over the Koszul resolution:
/// Σ_I (-1)^{|I|} deg(Sym^{h-k_I} E ⊗ O(M_I)), subsets walked as bitmasks.
inline BigInt koszul_degree_bruteforce(const SymPowerTable& table, const RelativeCI& x,
                                       std::int64_t h) {
  const auto c = static_cast<std::size_t>(x.c());
  if (c >= 63) throw InvalidInput("koszul oracle: codimension too large");
  BigInt total = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << c); ++mask) {
    std::int64_t k_sum = 0;
    std::int64_t y_sum = 0;
    int parity = 0;
    for (std::size_t i = 0; i < c; ++i)
      if (mask & (std::uint64_t{1} << i)) {
        k_sum += x.k()[i];
        y_sum += x.y()[i];
        parity ^= 1;
      }
    const std::int64_t a = h - k_sum;
    if (a < 0) continue;
    // O(hH - X_I) = O((h - k_I)H + π*M_I): the twist enters with a + sign.
    const BigInt term = sym_degree_bruteforce(table, a, -y_sum);
    total += parity ? BigInt(-term) : term;
  }
  return total;
}

inline BigInt koszul_degree_bruteforce(const SplitBundle& split, const RelativeCI& x,
                                       std::int64_t h, OracleLimits limits = {}) {
  check_split_matches(split, x);
  return koszul_degree_bruteforce(SymPowerTable(split, std::max<std::int64_t>(h, 0), limits), x, h);
}

/// Coefficient of t^h in ∏(1 - t^{k_i}) / (1 - t)^r by truncated series
/// arithmetic; 1/(1-t)^r is applied as r successive prefix sums.
inline BigInt hilbert_series_rank(const std::vector<std::int64_t>& k, std::int64_t r,
                                  std::int64_t h) {
  if (h < 0) throw InvalidInput("hilbert_series_rank needs h >= 0");
  const auto len = static_cast<std::size_t>(h + 1);
  std::vector<BigInt> series(len, 0);
  series[0] = 1;
  for (auto ki : k) {
    for (std::size_t i = len; i-- > 0;) {
      if (static_cast<std::int64_t>(i) >= ki) series[i] -= series[i - static_cast<std::size_t>(ki)];
    }
  }
  for (std::int64_t pass = 0; pass < r; ++pass)
    for (std::size_t i = 1; i < len; ++i) series[i] += series[i - 1];
  return series.back();
}

/// Element u·H^p + v·H^{p-1}Σ of the numerical ring of P(E), using Σ² = 0.
struct ChowElement {
  std::int64_t p = 0;
  Rat u = 1;
  Rat v = 0;

  /// Product with the divisor x·H + z·Σ.
  ChowElement times(const Rat& x, const Rat& z) const {
    return ChowElement{p + 1, x * u, x * v + z * u};
  }
};

/// Degree of a top-dimensional class: H^r = d, H^{r-1}Σ = 1.
inline Rat chow_contract(const ChowElement& e, std::int64_t r, std::int64_t d) {
  if (e.p != r) throw InvalidInput("chow_contract: class is not of top degree");
  return e.u * d + e.v;
}

struct ChowExpansion {
  BigInt h_top;
  BigInt fibre_deg;
  BigInt kf_top;
  CycleClass ci_class;
};

inline BigInt as_integer(const Rat& value, const char* what) {
  if (!is_integral(value)) throw IntegrityError(std::string(what) + " is not integral");
  return numerator_of(value);
}

/// Symbolic expansion of [X] = ∏(k_i H - y_i Σ) and its intersections with
/// H^n, Σ·H^{n-1} and K_f^n = ((k_J - r)H - (y_J - d)Σ)^n.
inline ChowExpansion chow_expand(const RelativeCI& x) {
  const std::int64_t r = x.r();
  const std::int64_t n = x.dim();
  ChowElement cls;
  for (std::size_t i = 0; i < x.k().size(); ++i) cls = cls.times(x.k()[i], -x.y()[i]);

  ChowElement with_h = cls;
  for (std::int64_t i = 0; i < n; ++i) with_h = with_h.times(1, 0);

  ChowElement with_fibre = cls.times(0, 1);
  for (std::int64_t i = 0; i < n - 1; ++i) with_fibre = with_fibre.times(1, 0);

  const Rat a(x.k_total() - r);
  const Rat b(x.y_total() - x.d());
  ChowElement with_kf = cls;
  for (std::int64_t i = 0; i < n; ++i) with_kf = with_kf.times(a, -b);

  return ChowExpansion{as_integer(chow_contract(with_h, r, x.d()), "H_X^n"),
                       as_integer(chow_contract(with_fibre, r, x.d()), "H_F^{n-1}"),
                       as_integer(chow_contract(with_kf, r, x.d()), "K_f^n"),
                       CycleClass{x.c(), cls.u, cls.v}};
}

struct OracleSuiteResult {
  std::string name;
  std::int64_t checks = 0;
  std::vector<std::string> mismatches;

  bool passed() const { return mismatches.empty(); }
};

/// Runs the four oracle suites (symmetric powers, Koszul degrees, Hilbert
/// series ranks, Chow expansion) against the closed forms for h = 0..h_max.
inline std::vector<OracleSuiteResult> run_oracle_suites(const SplitBundle& split,
                                                        const RelativeCI& x, std::int64_t h_max,
                                                        OracleLimits limits = {}) {
  check_split_matches(split, x);
  const SymPowerTable table(split, h_max, limits);
  std::vector<OracleSuiteResult> out(4);
  out[0].name = "sym_degree";
  out[1].name = "koszul_degree";
  out[2].name = "hilbert_rank";
  out[3].name = "chow_expand";

  for (std::int64_t a = 0; a <= h_max; ++a)
    for (std::int64_t twist : {std::int64_t{0}, x.y_total(), -x.y_total()}) {
      ++out[0].checks;
      const BigInt brute = sym_degree_bruteforce(table, a, twist);
      const Rat closed = sym_degree_closed_form(x.r(), x.d(), a, twist);
      if (Rat(brute) != closed)
        out[0].mismatches.push_back("a=" + std::to_string(a) + " twist=" + std::to_string(twist) +
                                    ": enumeration " + brute.str() + " vs closed form " +
                                    to_string(closed));
    }

  for (std::int64_t h = 0; h <= h_max; ++h) {
    ++out[1].checks;
    const BigInt brute = koszul_degree_bruteforce(table, x, h);
    const BigInt closed = deg_pf(x, h);
    if (brute != closed)
      out[1].mismatches.push_back("h=" + std::to_string(h) + ": koszul " + brute.str() +
                                  " vs deg_pf " + closed.str());
    ++out[2].checks;
    const std::vector<std::int64_t> k(x.k().begin(), x.k().end());
    const BigInt series = hilbert_series_rank(k, x.r(), h);
    const BigInt rank = rank_pf(x, h);
    if (series != rank)
      out[2].mismatches.push_back("h=" + std::to_string(h) + ": series " + series.str() +
                                  " vs rank_pf " + rank.str());
  }

  const auto chow = chow_expand(x);
  auto compare = [&](const std::string& what, const auto& lhs, const auto& rhs) {
    ++out[3].checks;
    if (lhs != rhs) out[3].mismatches.push_back(what + ": chow " + to_string(lhs) + " vs closed " + to_string(rhs));
  };
  compare("h_top", chow.h_top, h_top(x));
  compare("fibre_deg", chow.fibre_deg, fibre_deg(x));
  compare("kf_top", chow.kf_top, kf_top(x));
  const auto cls = ci_class(x);
  compare("class.p", chow.ci_class.p, cls.p);
  compare("class.q", chow.ci_class.q, cls.q);
  return out;
}

}  // namespace relci
