#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace pcmlab {

/// Strictly positive weight vector normalized to sum 1.
class PriorityVector {
 public:
  static constexpr double kSumTolerance = 1e-12;

  /// Validates that `weights` is already normalized (|sum - 1| <= kSumTolerance).
  explicit PriorityVector(std::vector<double> weights);

  /// Scales arbitrary positive weights to sum 1.
  static PriorityVector normalized(std::vector<double> weights);

  std::size_t size() const noexcept { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }
  std::span<const double> values() const noexcept { return weights_; }
  const std::vector<double>& to_vector() const noexcept { return weights_; }

  auto begin() const noexcept { return weights_.begin(); }
  auto end() const noexcept { return weights_.end(); }

  friend bool operator==(const PriorityVector&, const PriorityVector&) = default;

 private:
  struct Trusted {};
  PriorityVector(Trusted, std::vector<double> weights) : weights_(std::move(weights)) {}

  std::vector<double> weights_;
};

/// Infinity-norm distance between two vectors of equal length.
double max_abs_difference(const PriorityVector& a, const PriorityVector& b);

}  // namespace pcmlab
