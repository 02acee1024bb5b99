#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "relci/bundle.hpp"
#include "relci/errors.hpp"
#include "relci/exact_math.hpp"

namespace relci {

/// X = X_1 ∩ ... ∩ X_c in P(E), with X_i ∈ |k_i H - π*M_i| and deg M_i = y_i.
class RelativeCI {
 public:
  RelativeCI(BundleOverCurve bundle, std::vector<std::int64_t> k, std::vector<std::int64_t> y)
      : bundle_(std::move(bundle)), k_(std::move(k)), y_(std::move(y)) {
    const auto c = static_cast<std::int64_t>(k_.size());
    if (y_.size() != k_.size())
      throw InvalidInput("ci.y has length " + std::to_string(y_.size()) + " but ci.k has length " +
                         std::to_string(k_.size()));
    if (c < 1) throw InvalidInput("ci.k must be nonempty (codimension c >= 1)");
    if (c > bundle_.rank() - 2)
      throw InvalidInput("codimension c = " + std::to_string(c) + " exceeds rank - 2 = " +
                         std::to_string(bundle_.rank() - 2));
    for (std::size_t i = 0; i < k_.size(); ++i)
      if (k_[i] < 2) throw InvalidInput("ci.k[" + std::to_string(i) + "] must be >= 2");
  }

  const BundleOverCurve& bundle() const { return bundle_; }
  std::int64_t r() const { return bundle_.rank(); }
  std::int64_t d() const { return bundle_.degree(); }
  std::int64_t c() const { return static_cast<std::int64_t>(k_.size()); }
  /// Relative dimension of X over B plus one, i.e. dim X.
  std::int64_t dim() const { return r() - c(); }

  std::span<const std::int64_t> k() const { return k_; }
  std::span<const std::int64_t> y() const { return y_; }
  std::int64_t k_total() const { return std::accumulate(k_.begin(), k_.end(), std::int64_t{0}); }
  std::int64_t y_total() const { return std::accumulate(y_.begin(), y_.end(), std::int64_t{0}); }
  std::int64_t k_min() const { return *std::min_element(k_.begin(), k_.end()); }

  bool balanced() const {
    return std::all_of(k_.begin(), k_.end(), [&](auto v) { return v == k_.front(); });
  }

  /// Σ y_i / k_i.
  Rat twist_ratio_sum() const {
    Rat s = 0;
    for (std::size_t i = 0; i < k_.size(); ++i) s += Rat(y_[i], k_[i]);
    return s;
  }

  /// ∏ k_i.
  BigInt k_product() const {
    BigInt p = 1;
    for (auto v : k_) p *= v;
    return p;
  }

  /// ∏_{j≠i} k_j, computed without division.
  BigInt k_product_except(std::size_t i) const {
    BigInt p = 1;
    for (std::size_t j = 0; j < k_.size(); ++j)
      if (j != i) p *= k_[j];
    return p;
  }

 private:
  BundleOverCurve bundle_;
  std::vector<std::int64_t> k_;
  std::vector<std::int64_t> y_;
};

}  // namespace relci
