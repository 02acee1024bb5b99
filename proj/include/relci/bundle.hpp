#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "relci/errors.hpp"
#include "relci/exact_math.hpp"

namespace relci {

/// One subquotient E_j / E_{j-1} of the Harder-Narasimhan filtration.
struct HnBlock {
  std::int64_t rank;
  std::int64_t degree;

  Rat slope() const { return Rat(degree, rank); }
  friend bool operator==(const HnBlock&, const HnBlock&) = default;
};

/// Vector bundle E on a smooth projective curve, described numerically.
///
/// The HN data is optional. Without it only slope-mu operations (the
/// intermediate cone, the alpha-invariant) are available.
class BundleOverCurve {
 public:
  BundleOverCurve(std::int64_t rank, std::int64_t degree, std::int64_t base_genus = 0,
                  std::optional<std::vector<HnBlock>> hn = std::nullopt)
      : rank_(rank), degree_(degree), base_genus_(base_genus), hn_(std::move(hn)) {
    if (rank_ < 2) throw InvalidInput("bundle.rank must be >= 2");
    if (base_genus_ < 0) throw InvalidInput("bundle.base_genus must be >= 0");
    if (hn_) validate_hn();
  }

  static BundleOverCurve semistable(std::int64_t rank, std::int64_t degree,
                                    std::int64_t base_genus = 0) {
    return BundleOverCurve(rank, degree, base_genus, std::vector<HnBlock>{{rank, degree}});
  }

  /// Direct sum of line bundles of the given degrees; the HN filtration
  /// groups equal degrees, largest first.
  static BundleOverCurve split(const std::vector<std::int64_t>& line_degrees,
                               std::int64_t base_genus = 0) {
    if (line_degrees.size() < 2) throw InvalidInput("bundle.split needs at least two line bundles");
    std::map<std::int64_t, std::int64_t, std::greater<>> grouped;
    std::int64_t total = 0;
    for (auto a : line_degrees) {
      ++grouped[a];
      total += a;
    }
    std::vector<HnBlock> hn;
    for (auto [deg, mult] : grouped) hn.push_back({mult, deg * mult});
    return BundleOverCurve(static_cast<std::int64_t>(line_degrees.size()), total, base_genus,
                           std::move(hn));
  }

  std::int64_t rank() const { return rank_; }
  std::int64_t degree() const { return degree_; }
  /// Metadata only; no formula depends on it.
  std::int64_t base_genus() const { return base_genus_; }
  bool has_hn() const { return hn_.has_value(); }
  const std::optional<std::vector<HnBlock>>& hn() const { return hn_; }

  const std::vector<HnBlock>& hn_or_throw() const {
    if (!hn_) throw InvalidInput("virtual slopes unavailable: bundle has no HN data");
    return *hn_;
  }

  Rat slope() const { return Rat(degree_, rank_); }
  /// mu_1, the largest HN slope.
  Rat max_slope() const { return hn_or_throw().front().slope(); }
  /// mu_l, the smallest HN slope.
  Rat min_slope() const { return hn_or_throw().back().slope(); }
  bool is_semistable() const { return hn_or_throw().size() == 1; }

 private:
  void validate_hn() const {
    const auto& blocks = *hn_;
    if (blocks.empty()) throw InvalidInput("bundle.hn must have at least one block");
    std::int64_t rank_sum = 0;
    std::int64_t degree_sum = 0;
    for (std::size_t j = 0; j < blocks.size(); ++j) {
      if (blocks[j].rank < 1) throw InvalidInput("bundle.hn[" + std::to_string(j) + "].rank must be >= 1");
      rank_sum += blocks[j].rank;
      degree_sum += blocks[j].degree;
      if (j > 0 && !(blocks[j].slope() < blocks[j - 1].slope()))
        throw InvalidInput("bundle.hn slopes must be strictly decreasing (block " +
                           std::to_string(j) + ")");
    }
    if (rank_sum != rank_) throw InvalidInput("bundle.hn ranks must sum to bundle.rank");
    if (degree_sum != degree_) throw InvalidInput("bundle.hn degrees must sum to bundle.degree");
    const Rat mu = slope();
    if (mu > blocks.front().slope() || mu < blocks.back().slope())
      throw IntegrityError("slope outside [mu_l, mu_1] despite consistent HN sums");
  }

  std::int64_t rank_;
  std::int64_t degree_;
  std::int64_t base_genus_;
  std::optional<std::vector<HnBlock>> hn_;
};

}  // namespace relci
