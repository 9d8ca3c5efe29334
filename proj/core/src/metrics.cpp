#include "pcmlab/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pcmlab/error.hpp"

namespace pcmlab {

namespace {

void same_length(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InputError("vector length mismatch");
  if (a.empty()) throw InputError("empty vectors");
}

void positive(std::span<const double> w) {
  for (double x : w) {
    if (!(x > 0.0)) throw InputError("reference vector must be strictly positive");
  }
}

}  // namespace

double mae(std::span<const double> w, std::span<const double> x) {
  same_length(w, x);
  double acc = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) acc += std::abs(w[i] - x[i]);
  return acc / static_cast<double>(w.size());
}

double relative_error(std::span<const double> w, std::span<const double> x) {
  same_length(w, x);
  positive(w);
  double acc = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) acc += std::abs(w[i] - x[i]) / w[i];
  return acc / static_cast<double>(w.size());
}

double relative_ratio(std::span<const double> w, std::span<const double> x) {
  same_length(w, x);
  positive(w);
  double acc = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) acc += x[i] / w[i];
  return acc / static_cast<double>(w.size());
}

std::vector<double> average_ranks(std::span<const double> v, double tie_tolerance) {
  const std::size_t n = v.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(n);
  std::size_t start = 0;
  while (start < n) {
    std::size_t end = start + 1;
    // A run of ties: each value close to its predecessor.
    while (end < n) {
      const double prev = v[order[end - 1]];
      const double cur = v[order[end]];
      const double scale = std::max(std::abs(prev), std::abs(cur));
      if (cur - prev > tie_tolerance * scale) break;
      ++end;
    }
    const double rank = 0.5 * static_cast<double>(start + end - 1) + 1.0;
    for (std::size_t k = start; k < end; ++k) ranks[order[k]] = rank;
    start = end;
  }
  return ranks;
}

double spearman_rho(std::span<const double> a, std::span<const double> b, double tie_tolerance) {
  same_length(a, b);
  if (a.size() < 2) throw InputError("rank correlation needs at least 2 entries");
  const std::vector<double> ra = average_ranks(a, tie_tolerance);
  const std::vector<double> rb = average_ranks(b, tie_tolerance);
  const double n = static_cast<double>(a.size());
  const double mean = (n + 1.0) / 2.0;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = ra[i] - mean;
    const double db = rb[i] - mean;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa == 0.0 || sbb == 0.0) throw InputError("rank correlation undefined: constant vector");
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

AggregateSummary aggregate(std::span<const QualityRecord> records) {
  if (records.empty()) throw InputError("cannot aggregate zero records");
  AggregateSummary s;
  for (const QualityRecord& r : records) {
    s.msrc += r.src;
    s.mre += r.re;
    s.mrr += r.rr;
    s.mmae += r.mae;
  }
  const double n = static_cast<double>(records.size());
  s.msrc /= n;
  s.mre /= n;
  s.mrr /= n;
  s.mmae /= n;
  s.count = records.size();
  return s;
}

double sorted_quantile(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw InputError("quantile of an empty sample");
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("quantile order must lie in [0, 1]");
  const double h = static_cast<double>(sorted.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

double empirical_quantile(std::span<const double> values, double p) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  return sorted_quantile(sorted, p);
}

TStatistic t_statistic(double r, std::size_t sample_size) {
  if (!(std::abs(r) < 1.0)) throw InputError("t statistic needs |R| < 1");
  if (sample_size < 3) throw InputError("t statistic needs a sample of at least 3");
  const double df = static_cast<double>(sample_size - 2);
  return {r * std::sqrt(df / (1.0 - r * r)), sample_size - 2};
}

std::optional<double> significance_level(double t) {
  for (const CriticalValue& c : kLargeSampleCriticalValues) {
    if (t > c.t) return c.alpha;
  }
  return std::nullopt;
}

}  // namespace pcmlab
