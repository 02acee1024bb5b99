#pragma once

/// \file
/// Exact arithmetic layer: big integers, reduced rationals, truncated
/// binomials, subset enumeration and exact polynomial interpolation.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "relci/errors.hpp"

namespace relci {

using BigInt = boost::multiprecision::cpp_int;
/// Always stored reduced with a positive denominator.
using Rat = boost::multiprecision::cpp_rational;

inline int sign(const BigInt& x) { return x.sign(); }
inline int sign(const Rat& x) { return x.sign(); }

inline BigInt numerator_of(const Rat& x) {
  return boost::multiprecision::numerator(x);
}
inline BigInt denominator_of(const Rat& x) {
  return boost::multiprecision::denominator(x);
}

inline Rat make_rat(const BigInt& num, const BigInt& den) {
  if (den == 0) throw InvalidInput("rational with zero denominator");
  return Rat(num, den);
}

inline bool is_integral(const Rat& x) { return denominator_of(x) == 1; }

inline std::string to_string(const BigInt& x) { return x.str(); }

/// "p" when integral, "p/q" otherwise.
inline std::string to_string(const Rat& x) {
  if (is_integral(x)) return numerator_of(x).str();
  return numerator_of(x).str() + "/" + denominator_of(x).str();
}

/// Parses "p", "-p" or "p/q" (decimal digits only).
inline Rat parse_rat(std::string_view text) {
  auto parse_int = [&](std::string_view s) -> BigInt {
    std::size_t pos = 0;
    bool negative = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
      negative = s[0] == '-';
      pos = 1;
    }
    if (pos == s.size()) throw InvalidInput("malformed rational '" + std::string(text) + "'");
    BigInt value = 0;
    for (; pos < s.size(); ++pos) {
      if (s[pos] < '0' || s[pos] > '9')
        throw InvalidInput("malformed rational '" + std::string(text) + "'");
      value = value * 10 + (s[pos] - '0');
    }
    return negative ? BigInt(-value) : value;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rat(parse_int(text));
  const BigInt den = parse_int(text.substr(slash + 1));
  if (den <= 0) throw InvalidInput("rational denominator must be positive");
  return Rat(parse_int(text.substr(0, slash)), den);
}

template <typename T>
T ipow(T base, std::int64_t exponent) {
  if (exponent < 0) throw InvalidInput("negative exponent");
  T result = 1;
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    base *= base;
    exponent >>= 1;
  }
  return result;
}

/// C(n, m) for n >= m >= 0, and 0 whenever n < m (including every negative
/// n). This is the truncation convention, not the analytic continuation.
inline BigInt binom_trunc(std::int64_t n, std::int64_t m) {
  if (m < 0) throw InvalidInput("binom_trunc: lower index must be nonnegative");
  if (n < m) return 0;
  m = std::min(m, n - m);
  BigInt result = 1;
  for (std::int64_t i = 0; i < m; ++i) {
    result *= n - i;
    result /= i + 1;  // exact at every step
  }
  return result;
}

/// A subset of {0, ..., c-1}, stored as strictly increasing positions.
struct MultiIndex {
  std::vector<std::size_t> positions;

  std::size_t size() const { return positions.size(); }

  /// Sum of values[i] over the subset; 0 for the empty subset.
  std::int64_t sum(std::span<const std::int64_t> values) const {
    std::int64_t total = 0;
    for (auto p : positions) total += values[p];
    return total;
  }

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
};

/// Streams the C(c, l) subsets of size l of {0, ..., c-1} in lexicographic
/// order without materializing the power set.
class SubsetsOfSize {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = MultiIndex;
    using difference_type = std::ptrdiff_t;
    using pointer = const MultiIndex*;
    using reference = const MultiIndex&;

    iterator() = default;
    iterator(std::size_t c, std::size_t l) : c_(c), done_(false) {
      current_.positions.resize(l);
      for (std::size_t i = 0; i < l; ++i) current_.positions[i] = i;
    }

    reference operator*() const { return current_; }
    pointer operator->() const { return &current_; }

    iterator& operator++() {
      auto& pos = current_.positions;
      const std::size_t l = pos.size();
      std::size_t i = l;
      while (i > 0) {
        --i;
        if (pos[i] < c_ - l + i) {
          ++pos[i];
          for (std::size_t j = i + 1; j < l; ++j) pos[j] = pos[j - 1] + 1;
          return *this;
        }
      }
      done_ = true;
      return *this;
    }
    void operator++(int) { ++*this; }

    friend bool operator==(const iterator& a, const iterator& b) {
      if (a.done_ || b.done_) return a.done_ == b.done_;
      return a.current_ == b.current_;
    }

   private:
    std::size_t c_ = 0;
    bool done_ = true;
    MultiIndex current_;
  };

  SubsetsOfSize(std::size_t c, std::size_t l) : c_(c), l_(l) {
    if (l > c) throw InvalidInput("subset size exceeds ground set");
  }

  iterator begin() const { return iterator(c_, l_); }
  iterator end() const { return iterator(); }

 private:
  std::size_t c_;
  std::size_t l_;
};

inline SubsetsOfSize subsets_of_size(std::size_t c, std::size_t l) {
  return SubsetsOfSize(c, l);
}

/// Dense univariate polynomial with exact coefficients; coefficient i
/// multiplies h^i. The zero polynomial has no coefficients.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rat> coefficients) : coeffs_(std::move(coefficients)) {
    trim();
  }

  static UniPoly constant(Rat value) { return UniPoly({std::move(value)}); }

  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  std::int64_t degree() const { return static_cast<std::int64_t>(coeffs_.size()) - 1; }
  const std::vector<Rat>& coefficients() const { return coeffs_; }

  Rat coefficient(std::size_t power) const {
    return power < coeffs_.size() ? coeffs_[power] : Rat(0);
  }
  Rat leading() const { return is_zero() ? Rat(0) : coeffs_.back(); }

  Rat operator()(const Rat& x) const {
    Rat acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    std::vector<Rat> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coefficient(i) + b.coefficient(i);
    return UniPoly(std::move(out));
  }

  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rat> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return UniPoly(std::move(out));
  }

  friend UniPoly operator*(const Rat& s, const UniPoly& p) {
    std::vector<Rat> out = p.coeffs_;
    for (auto& x : out) x *= s;
    return UniPoly(std::move(out));
  }

  friend bool operator==(const UniPoly&, const UniPoly&) = default;

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<Rat> coeffs_;
};

struct Sample {
  std::int64_t x;
  Rat y;
};

/// Unique polynomial of degree < samples.size() through every sample, via
/// Newton divided differences in exact arithmetic.
inline UniPoly interpolate(std::span<const Sample> samples) {
  if (samples.empty()) throw InvalidInput("interpolate: need at least one sample");
  const std::size_t n = samples.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (samples[i].x == samples[j].x) throw InvalidInput("interpolate: duplicate abscissa");

  std::vector<Rat> table(n);
  for (std::size_t i = 0; i < n; ++i) table[i] = samples[i].y;
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t i = n - 1; i >= level; --i) {
      table[i] = (table[i] - table[i - 1]) / Rat(samples[i].x - samples[i - level].x);
      if (i == level) break;
    }

  // Horner over the Newton basis.
  UniPoly result = UniPoly::constant(table[n - 1]);
  for (std::size_t i = n - 1; i-- > 0;) {
    result = UniPoly({Rat(-samples[i].x), Rat(1)}) * result + UniPoly::constant(table[i]);
  }
  return result;
}

inline UniPoly interpolate(const std::vector<Sample>& samples) {
  return interpolate(std::span<const Sample>(samples));
}

/// Cauchy bound: every real root has |x| < 1 + max |a_i / a_lead|.
inline Rat cauchy_root_bound(const UniPoly& p) {
  if (p.degree() < 1) return 0;
  const Rat lead = p.leading();
  Rat worst = 0;
  for (std::int64_t i = 0; i < p.degree(); ++i) {
    Rat ratio = p.coefficient(static_cast<std::size_t>(i)) / lead;
    if (ratio < 0) ratio = -ratio;
    worst = std::max(worst, ratio);
  }
  return worst + 1;
}

/// Smallest integer >= x.
inline BigInt ceil_of(const Rat& x) {
  BigInt q = numerator_of(x) / denominator_of(x);  // truncates toward zero
  if (q * denominator_of(x) < numerator_of(x)) ++q;
  return q;
}

}  // namespace relci
