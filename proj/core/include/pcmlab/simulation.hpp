#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "pcmlab/consistency.hpp"
#include "pcmlab/judgment_scale.hpp"
#include "pcmlab/metrics.hpp"
#include "pcmlab/perturbation.hpp"
#include "pcmlab/prioritization.hpp"

namespace pcmlab {

/// FR-PCM: perturb and round the upper triangle, then mirror it.
/// APCM: perturb and round every off-diagonal entry independently.
enum class ReciprocityPolicy { forced, arbitrary };

/// n independent U(0,1) draws (zeros redrawn), normalized to sum 1.
PriorityVector random_priority_vector(std::size_t n, Rng& rng);

/// Hierarchy-level experiment: one criteria matrix plus one alternatives
/// matrix per criterion, composed into a total priority vector.
struct Sa1Config {
  std::size_t criteria_min = 4;
  std::size_t criteria_max = 4;
  std::size_t alternatives_min = 4;
  std::size_t alternatives_max = 4;
  JudgmentScale scale = JudgmentScale::geometric();
  ReciprocityPolicy reciprocity = ReciprocityPolicy::forced;
  std::vector<Method> methods{kAllMethods.begin(), kAllMethods.end()};
  PerturbationModel perturbation = PerturbationModel::uniform(0.01, 1.99);
  std::size_t repetitions = 15;  // perturbations of each model
  std::size_t models = 2000;     // random hierarchies
  std::uint64_t seed = 1;
  OptimizerSettings optimizer;

  void validate() const;
};

struct Sa1Record {
  std::size_t model_id;
  std::size_t rep_id;
  Method method;
  std::size_t criteria;
  std::size_t alternatives;
  QualityRecord quality;
};

struct MethodSummary {
  Method method;
  AggregateSummary summary;
  std::size_t failures = 0;          // optimizer / eigen failures, excluded
  std::size_t undefined_ranks = 0;   // constant estimate, SRC recorded as 0
};

struct Sa1Result {
  std::vector<Sa1Record> records;
  std::vector<MethodSummary> summaries;  // in config.methods order
};

/// Throws NumericalError when more than kMaxFailureRate of a method's cases fail.
Sa1Result run_sa1(const Sa1Config& config, unsigned workers = 0);

/// Single-matrix experiment: one large error on a random upper cell plus
/// small errors elsewhere, rounded and made reciprocal.
struct Sa2Config {
  std::size_t n = 4;
  /// Base vector b uses scales[(b / small_errors.size()) % scales.size()].
  std::vector<JudgmentScale> scales{JudgmentScale::saaty()};
  Method method = Method::llsm;
  std::vector<Measure> measures{kAllMeasures.begin(), kAllMeasures.end()};
  std::size_t perturbations = 20;  // per base vector
  std::size_t base_vectors = 500;
  double large_lower = 2.0;
  double large_upper = 4.0;
  /// Base vector b uses small_errors[b % small_errors.size()].
  std::vector<PerturbationModel> small_errors = default_small_errors();
  std::uint64_t seed = 1;
  OptimizerSettings optimizer;

  /// Gamma, log-normal, truncated normal and uniform, each with mean 1 on [0.5, 1.5].
  static std::vector<PerturbationModel> default_small_errors();
  void validate() const;
};

struct Sa2Record {
  std::size_t model_id;
  std::size_t rep_id;
  Method method;
  std::vector<double> measures;  // aligned with Sa2Config::measures
  double mae;
  std::pair<std::size_t, std::size_t> large_cell;  // 0-based, first < second
  std::vector<double> estimate;
};

struct Sa2Result {
  std::vector<Sa2Record> records;
  std::size_t failures = 0;
};

Sa2Result run_sa2(const Sa2Config& config, unsigned workers = 0);

inline constexpr double kMaxFailureRate = 1e-3;
inline constexpr std::array<double, 5> kReportQuantiles = {0.05, 0.1, 0.5, 0.9, 0.95};

struct BinnedReport {
  struct Bin {
    std::size_t index;  // 1-based
    double lower;
    double upper;  // +inf for the last bin
    std::size_t count;
    double mean_measure;
    std::array<double, 5> mae_quantiles;  // at kReportQuantiles; NaN when empty
    double mean_mae;
  };
  std::vector<Bin> bins;
};

/// Splits records at the measure's quantiles of order k/bins. Throws
/// InputError with fewer than `bins` records or when all values coincide.
BinnedReport bin_values(std::span<const double> measure, std::span<const double> mae,
                        std::size_t bins = 15);
BinnedReport bin_records(const std::vector<Sa2Record>& records, const Sa2Config& config, Measure measure,
                         std::size_t bins = 15);

/// Which per-bin MAE series a quality score correlates against the bin means.
enum class QualitySeries { q05, q10, q50, q90, q95, mean };

/// Spearman correlation between per-bin mean measure and the chosen MAE series
/// over the non-empty bins.
double cm_quality_score(const BinnedReport& report, QualitySeries series = QualitySeries::q05);

/// Runs fn(unit) for unit in [0, count) on `workers` threads (0 = hardware).
void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& fn);

}  // namespace pcmlab
