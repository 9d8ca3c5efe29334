#include "pcmlab/priority_vector.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "pcmlab/error.hpp"

namespace pcmlab {

namespace {

void check_entries(const std::vector<double>& w) {
  if (w.size() < 2) {
    throw InputError("priority vector needs at least 2 entries, got " + std::to_string(w.size()));
  }
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!std::isfinite(w[i]) || !(w[i] > 0.0)) {
      throw InputError("priority vector entry " + std::to_string(i) + " must be finite and > 0");
    }
  }
}

}  // namespace

PriorityVector::PriorityVector(std::vector<double> weights) : weights_(std::move(weights)) {
  check_entries(weights_);
  const double sum = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw InputError("priority vector must sum to 1 (sum = " + std::to_string(sum) + ")");
  }
}

PriorityVector PriorityVector::normalized(std::vector<double> weights) {
  check_entries(weights);
  const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  for (double& x : weights) x /= sum;
  return PriorityVector(Trusted{}, std::move(weights));
}

double max_abs_difference(const PriorityVector& a, const PriorityVector& b) {
  if (a.size() != b.size()) throw InputError("vector length mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace pcmlab
