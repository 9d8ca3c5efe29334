#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "pcmlab/pcm.hpp"
#include "pcmlab/priority_vector.hpp"
#include "pcmlab/random.hpp"

namespace fixtures {

inline const std::vector<double> kTrueWeights = {7.0 / 20, 1.0 / 4, 1.0 / 4, 3.0 / 20};

inline pcmlab::PairwiseComparisonMatrix rx() {
  return pcmlab::PairwiseComparisonMatrix::from_rows(
      {{1, 1, 1, 2}, {1, 1, 1, 2}, {1, 1, 1, 2}, {0.5, 0.5, 0.5, 1}});
}

inline pcmlab::PairwiseComparisonMatrix ax() {
  return pcmlab::PairwiseComparisonMatrix::from_rows(
      {{1, 1, 1, 2}, {0.5, 1, 1, 2}, {0.5, 1, 1, 2}, {0.5, 0.5, 0.5, 1}});
}

inline pcmlab::PairwiseComparisonMatrix three_by_three() {
  return pcmlab::PairwiseComparisonMatrix::from_rows({{1, 2, 4}, {0.5, 1, 3}, {0.25, 1.0 / 3, 1}});
}

inline pcmlab::PriorityVector random_weights(std::size_t n, pcmlab::Rng& rng) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return pcmlab::PriorityVector::normalized(v);
}

/// Reciprocal matrix with multiplicative log-uniform noise of half-width `spread` on the upper triangle.
inline pcmlab::PairwiseComparisonMatrix noisy_reciprocal(std::size_t n, double spread, pcmlab::Rng& rng) {
  const auto w = random_weights(n, rng);
  std::uniform_real_distribution<double> u(-spread, spread);
  std::vector<double> a(n * n, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      a[i * n + j] = w[i] / w[j] * std::exp(u(rng));
      a[j * n + i] = 1.0 / a[i * n + j];
    }
  }
  return pcmlab::PairwiseComparisonMatrix(n, a, pcmlab::Reciprocity::reciprocal);
}

}  // namespace fixtures
