#pragma once

#include <stdexcept>
#include <string>

namespace relci {

/// Input data that violates a documented invariant (bad rank, k_i < 2, ...).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A theorem-level operation was asked to run outside its hypotheses.
class HypothesisViolation : public std::domain_error {
 public:
  HypothesisViolation(std::string hypothesis, const std::string& what)
      : std::domain_error(what), hypothesis_(std::move(hypothesis)) {}

  const std::string& hypothesis() const noexcept { return hypothesis_; }

 private:
  std::string hypothesis_;
};

/// An exact identity that must hold by construction did not. Indicates a
/// transcription bug, never bad input.
class IntegrityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace relci
