#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "pcmlab/priority_vector.hpp"

namespace pcmlab {

/// (1/n) sum |w_i - x_i|
double mae(std::span<const double> w, std::span<const double> x);
/// (1/n) sum |w_i - x_i| / w_i, relative to the true vector w.
double relative_error(std::span<const double> w, std::span<const double> x);
/// (1/n) sum x_i / w_i
double relative_ratio(std::span<const double> w, std::span<const double> x);

/// Pearson correlation of average ranks. Values within relative `tie_tolerance`
/// of each other share a rank. Throws InputError when a rank vector is constant.
double spearman_rho(std::span<const double> a, std::span<const double> b, double tie_tolerance = 0.0);

/// Average ranks (1-based) with ties sharing the mean rank.
std::vector<double> average_ranks(std::span<const double> v, double tie_tolerance = 0.0);

inline double mae(const PriorityVector& w, const PriorityVector& x) { return mae(w.values(), x.values()); }
inline double relative_error(const PriorityVector& w, const PriorityVector& x) {
  return relative_error(w.values(), x.values());
}
inline double relative_ratio(const PriorityVector& w, const PriorityVector& x) {
  return relative_ratio(w.values(), x.values());
}

struct QualityRecord {
  double mae = 0.0;
  double re = 0.0;
  double rr = 1.0;
  double src = 1.0;
};

struct AggregateSummary {
  double msrc = 0.0;
  double mre = 0.0;
  double mrr = 0.0;
  double mmae = 0.0;
  std::size_t count = 0;
};

/// Unweighted means; throws InputError on empty input.
AggregateSummary aggregate(std::span<const QualityRecord> records);

/// Linear interpolation between order statistics at h = (n - 1) p.
double empirical_quantile(std::span<const double> values, double p);
/// Same, on data already sorted ascending.
double sorted_quantile(std::span<const double> sorted, double p);

struct TStatistic {
  double t;
  std::size_t df;
};

/// t = R sqrt((n - 2) / (1 - R^2)), df = n - 2.
TStatistic t_statistic(double r, std::size_t sample_size);

/// One-sided critical values of Student's t for large df at alpha = 0.01, 0.02, 0.03.
struct CriticalValue {
  double alpha;
  double t;
};
inline constexpr CriticalValue kLargeSampleCriticalValues[] = {
    {0.01, 2.326472}, {0.02, 2.053838}, {0.03, 1.880865}};

/// Smallest tabulated alpha whose critical value `t` exceeds, if any.
std::optional<double> significance_level(double t);

}  // namespace pcmlab
