#pragma once

/// \file
/// Formula-level Hilbert-Mumford checks on degrees of contact. The e_F
/// values are inputs; nothing here builds Chow forms.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "relci/errors.hpp"
#include "relci/exact_math.hpp"

namespace relci {

/// A subvariety T ⊂ P^n seen through one weighted filtration.
struct ContactInstance {
  std::int64_t ambient_n;
  std::int64_t dim;
  BigInt deg;
  Rat e_f;  // degree of contact e_F(T)

  void validate() const {
    if (ambient_n < 1) throw InvalidInput("contact: ambient_n must be >= 1");
    if (dim < 0 || dim > ambient_n) throw InvalidInput("contact: dim must lie in 0..ambient_n");
    if (deg < 1) throw InvalidInput("contact: deg must be >= 1");
  }
};

/// Weights r_0..r_n of a weighted filtration of V.
class WeightFiltration {
 public:
  explicit WeightFiltration(std::vector<Rat> weights) : weights_(std::move(weights)) {
    if (weights_.empty()) throw InvalidInput("contact: weights must be nonempty");
    bool any_positive = false;
    for (const auto& w : weights_) {
      if (w < 0) throw InvalidInput("contact: weights must be nonnegative");
      any_positive = any_positive || w > 0;
    }
    if (!any_positive) throw InvalidInput("contact: weights must not all vanish");
  }

  const std::vector<Rat>& weights() const { return weights_; }
  std::int64_t ambient_n() const { return static_cast<std::int64_t>(weights_.size()) - 1; }

  Rat total() const {
    Rat s = 0;
    for (const auto& w : weights_) s += w;
    return s;
  }
  /// Σ r_i / (n + 1).
  Rat mean() const { return total() / Rat(static_cast<std::int64_t>(weights_.size())); }

 private:
  std::vector<Rat> weights_;
};

enum class HmLevel { Stable, Semistable, Unstable };

inline const char* to_string(HmLevel level) {
  switch (level) {
    case HmLevel::Stable: return "Stable";
    case HmLevel::Semistable: return "Semistable";
    case HmLevel::Unstable: return "Unstable";
  }
  return "?";
}

inline void check_ambient(const ContactInstance& t, const WeightFiltration& w) {
  t.validate();
  if (t.ambient_n != w.ambient_n())
    throw InvalidInput("contact: " + std::to_string(w.weights().size()) +
                       " weights do not match ambient P^" + std::to_string(t.ambient_n));
}

/// e_F(T) / ((dim T + 1)·deg T).
inline Rat normalized_contact(const ContactInstance& t) {
  return t.e_f / Rat(BigInt(t.dim + 1) * t.deg);
}

/// Hilbert-Mumford inequality for this one filtration. Semistable means
/// equality; a pass here says nothing about other filtrations.
inline HmLevel hm_test(const ContactInstance& t, const WeightFiltration& w) {
  check_ambient(t, w);
  const Rat lhs = normalized_contact(t);
  const Rat rhs = w.mean();
  if (lhs < rhs) return HmLevel::Stable;
  if (lhs == rhs) return HmLevel::Semistable;
  return HmLevel::Unstable;
}

/// Degree of contact of a proper intersection Y·Z:
/// e_F(Y·Z) = deg Y·e_F(Z) + deg Z·e_F(Y) - deg Y·deg Z·Σ r_i.
inline ContactInstance contact_of_intersection(const ContactInstance& y, const ContactInstance& z,
                                               const WeightFiltration& w) {
  check_ambient(y, w);
  check_ambient(z, w);
  const std::int64_t dim = y.dim + z.dim - y.ambient_n;
  if (dim < 0)
    throw InvalidInput("contact: dim Y + dim Z = " + std::to_string(y.dim + z.dim) +
                       " < n, intersection cannot be proper");
  return ContactInstance{y.ambient_n, dim, y.deg * z.deg,
                         Rat(y.deg) * z.e_f + Rat(z.deg) * y.e_f - Rat(y.deg * z.deg) * w.total()};
}

struct PropagationCheck {
  /// Set when an input fails its precondition; the check is then not run.
  std::optional<std::string> precondition_violation;
  ContactInstance product{};
  HmLevel product_level = HmLevel::Unstable;
  /// Y·Z is at least semistable.
  bool holds = false;
  /// Some input was stable and Y·Z came out stable, or no input was stable.
  bool strictness_propagated = false;
};

/// Semistable inputs must give a semistable intersection, stable if either
/// input is stable.
inline PropagationCheck intersection_semistability_check(const ContactInstance& y,
                                                         const ContactInstance& z,
                                                         const WeightFiltration& w) {
  PropagationCheck out;
  HmLevel ly;
  HmLevel lz;
  try {
    ly = hm_test(y, w);
    lz = hm_test(z, w);
    out.product = contact_of_intersection(y, z, w);
  } catch (const InvalidInput& e) {
    out.precondition_violation = e.what();
    return out;
  }
  if (ly == HmLevel::Unstable || lz == HmLevel::Unstable) {
    out.precondition_violation = "inputs must both satisfy the semistable bound";
    return out;
  }
  out.product_level = hm_test(out.product, w);
  out.holds = out.product_level != HmLevel::Unstable;
  const bool some_stable = ly == HmLevel::Stable || lz == HmLevel::Stable;
  out.strictness_propagated = !some_stable || out.product_level == HmLevel::Stable;
  return out;
}

}  // namespace relci
