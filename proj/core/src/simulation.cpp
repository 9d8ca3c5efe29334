#include "pcmlab/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <string>
#include <thread>

#include "pcmlab/error.hpp"

namespace pcmlab {

namespace {

// Substream tags: one generator family per experiment kind.
constexpr std::uint64_t kSa1Stream = 1;
constexpr std::uint64_t kSa2Stream = 2;

// Near-equal estimated weights are treated as tied when ranking.
constexpr double kRankTieTolerance = 1e-9;

std::size_t uniform_size(std::size_t lo, std::size_t hi, Rng& rng) {
  if (lo == hi) return lo;
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// sum_c k_c a_c, renormalized against rounding drift.
PriorityVector compose(const PriorityVector& criteria, const std::vector<PriorityVector>& alternatives) {
  const std::size_t m = alternatives.front().size();
  std::vector<double> total(m, 0.0);
  for (std::size_t c = 0; c < criteria.size(); ++c) {
    for (std::size_t x = 0; x < m; ++x) total[x] += criteria[c] * alternatives[c][x];
  }
  return PriorityVector::normalized(std::move(total));
}

void check_failures(std::size_t failures, std::size_t attempts, const std::string& what) {
  if (attempts > 0 && static_cast<double>(failures) > kMaxFailureRate * static_cast<double>(attempts)) {
    throw NumericalError(what + ": " + std::to_string(failures) + " of " + std::to_string(attempts) +
                             " cases failed to converge (limit 0.1%)",
                         {});
  }
}

}  // namespace

void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& fn) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(count, 1)));
  if (workers <= 1) {
    for (std::size_t u = 0; u < count; ++u) fn(u);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t u = next.fetch_add(1);
        if (u >= count) return;
        try {
          fn(u);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next.store(count);
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

PriorityVector random_priority_vector(std::size_t n, Rng& rng) {
  if (n < 2) throw InputError("priority vector size must be >= 2");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> w(n);
  for (double& x : w) {
    do {
      x = unit(rng);
    } while (!(x > 0.0));
  }
  return PriorityVector::normalized(std::move(w));
}

void Sa1Config::validate() const {
  if (criteria_min < 2) throw ConfigError("criteria_min", "must be >= 2");
  if (criteria_max < criteria_min) throw ConfigError("criteria_max", "must be >= criteria_min");
  if (alternatives_min < 2) throw ConfigError("alternatives_min", "must be >= 2");
  if (alternatives_max < alternatives_min) {
    throw ConfigError("alternatives_max", "must be >= alternatives_min");
  }
  if (methods.empty()) throw ConfigError("methods", "at least one method is required");
  if (repetitions < 1) throw ConfigError("chi", "must be >= 1");
  if (models < 1) throw ConfigError("gamma", "must be >= 1");
  optimizer.validate();
}

Sa1Result run_sa1(const Sa1Config& config, unsigned workers) {
  config.validate();
  const std::size_t nm = config.methods.size();
  const Region region =
      config.reciprocity == ReciprocityPolicy::forced ? Region::upper_triangle : Region::off_diagonal;
  const bool shared = config.perturbation.draw_mode() == PerturbationModel::DrawMode::shared;

  struct UnitOutput {
    std::vector<Sa1Record> records;
    std::vector<std::size_t> failures;
    std::vector<std::size_t> undefined;
  };
  std::vector<UnitOutput> units(config.models);

  parallel_for(config.models, workers, [&](std::size_t g) {
    Rng rng = make_substream(config.seed, kSa1Stream, g);
    UnitOutput& out = units[g];
    out.failures.assign(nm, 0);
    out.undefined.assign(nm, 0);

    // Steps 1-3: true hierarchy and its total vector.
    const std::size_t n = uniform_size(config.criteria_min, config.criteria_max, rng);
    const std::size_t m = uniform_size(config.alternatives_min, config.alternatives_max, rng);
    const PriorityVector k = random_priority_vector(n, rng);
    std::vector<PriorityVector> a;
    a.reserve(n);
    for (std::size_t c = 0; c < n; ++c) a.push_back(random_priority_vector(m, rng));
    const PriorityVector w = compose(k, a);
    const PairwiseComparisonMatrix kk = pcm_from_weights(k);
    std::vector<PairwiseComparisonMatrix> aa;
    aa.reserve(n);
    for (const auto& v : a) aa.push_back(pcm_from_weights(v));

    for (std::size_t rep = 0; rep < config.repetitions; ++rep) {
      // Steps 4-6: perturb, round, apply the reciprocity policy.
      const PerturbationModel model =
          shared ? PerturbationModel::constant(sample_factor(config.perturbation, rng)) : config.perturbation;
      const auto judge = [&](const PairwiseComparisonMatrix& exact) {
        return round_entries(perturb_entries(exact, model, region, rng), config.scale, region);
      };
      const PairwiseComparisonMatrix kp = judge(kk);
      std::vector<PairwiseComparisonMatrix> ap;
      ap.reserve(n);
      for (const auto& mat : aa) ap.push_back(judge(mat));

      // Steps 7-9 per method.
      for (std::size_t mi = 0; mi < nm; ++mi) {
        const Method method = config.methods[mi];
        try {
          const PriorityVector ks = prioritize(kp, method, config.optimizer);
          std::vector<PriorityVector> as;
          as.reserve(n);
          for (const auto& mat : ap) as.push_back(prioritize(mat, method, config.optimizer));
          const PriorityVector ws = compose(ks, as);

          QualityRecord q;
          q.mae = mae(w, ws);
          q.re = relative_error(w, ws);
          q.rr = relative_ratio(w, ws);
          try {
            q.src = spearman_rho(ws.values(), w.values(), kRankTieTolerance);
          } catch (const InputError&) {
            q.src = 0.0;
            ++out.undefined[mi];
          }
          out.records.push_back({g, rep, method, n, m, q});
        } catch (const NumericalError&) {
          ++out.failures[mi];
        }
      }
    }
  });

  Sa1Result result;
  std::vector<std::size_t> failures(nm, 0), undefined(nm, 0);
  for (auto& u : units) {
    for (std::size_t mi = 0; mi < nm; ++mi) {
      failures[mi] += u.failures[mi];
      undefined[mi] += u.undefined[mi];
    }
    result.records.insert(result.records.end(), u.records.begin(), u.records.end());
  }

  const std::size_t attempts = config.models * config.repetitions;
  for (std::size_t mi = 0; mi < nm; ++mi) {
    const Method method = config.methods[mi];
    check_failures(failures[mi], attempts, std::string("SA1 ") + std::string(method_name(method)));
    std::vector<QualityRecord> q;
    q.reserve(attempts);
    for (const auto& r : result.records) {
      if (r.method == method) q.push_back(r.quality);
    }
    result.summaries.push_back({method, aggregate(q), failures[mi], undefined[mi]});
  }
  return result;
}

std::vector<PerturbationModel> Sa2Config::default_small_errors() {
  return {PerturbationModel::gamma(16.0, 0.5, 1.5), PerturbationModel::lognormal(0.25, 0.5, 1.5),
          PerturbationModel::truncated_normal(0.25, 0.5, 1.5), PerturbationModel::uniform(0.5, 1.5)};
}

void Sa2Config::validate() const {
  if (n < 4) throw ConfigError("n", "must be >= 4");
  if (scales.empty()) throw ConfigError("scale", "at least one scale is required");
  if (measures.empty()) throw ConfigError("measures", "at least one measure is required");
  if (perturbations < 1) throw ConfigError("nn", "must be >= 1");
  if (base_vectors < 1) throw ConfigError("nm", "must be >= 1");
  if (!(large_lower > 0.0) || large_upper < large_lower) {
    throw ConfigError("large_error", "interval must satisfy 0 < lower <= upper");
  }
  if (small_errors.empty()) throw ConfigError("small_error", "at least one model is required");
  optimizer.validate();
}

Sa2Result run_sa2(const Sa2Config& config, unsigned workers) {
  config.validate();
  const std::size_t n = config.n;
  const PerturbationModel large = PerturbationModel::uniform(config.large_lower, config.large_upper);

  std::vector<std::pair<std::size_t, std::size_t>> upper_cells;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) upper_cells.emplace_back(i, j);
  }

  struct UnitOutput {
    std::vector<Sa2Record> records;
    std::size_t failures = 0;
  };
  std::vector<UnitOutput> units(config.base_vectors);

  parallel_for(config.base_vectors, workers, [&](std::size_t b) {
    Rng rng = make_substream(config.seed, kSa2Stream, b);
    UnitOutput& out = units[b];
    const PerturbationModel& small = config.small_errors[b % config.small_errors.size()];
    const JudgmentScale& scale =
        config.scales[(b / config.small_errors.size()) % config.scales.size()];

    // Phase 1.
    const PriorityVector w = random_priority_vector(n, rng);
    const PairwiseComparisonMatrix exact = pcm_from_weights(w);

    for (std::size_t rep = 0; rep < config.perturbations; ++rep) {
      // Phase 2: one significant error on a uniformly chosen upper cell.
      const auto cell =
          upper_cells[std::uniform_int_distribution<std::size_t>(0, upper_cells.size() - 1)(rng)];
      const double big = sample_factor(large, rng);

      // Phases 3-5: small errors elsewhere, rounding, reciprocity.
      std::vector<double> a(exact.data().begin(), exact.data().end());
      for (const auto& [i, j] : upper_cells) {
        const double e = (i == cell.first && j == cell.second) ? big : sample_factor(small, rng);
        a[i * n + j] = scale.round(a[i * n + j] * e);
      }
      const PairwiseComparisonMatrix judged =
          enforce_reciprocity(PairwiseComparisonMatrix(n, std::move(a), Reciprocity::arbitrary));

      // Phase 6.
      try {
        Sa2Record rec{b, rep, config.method, {}, 0.0, cell, {}};
        rec.measures.reserve(config.measures.size());
        for (Measure ms : config.measures) rec.measures.push_back(compute_measure(ms, judged, config.optimizer));
        const PriorityVector est = prioritize(judged, config.method, config.optimizer);
        rec.mae = mae(w, est);
        rec.estimate = est.to_vector();
        out.records.push_back(std::move(rec));
      } catch (const NumericalError&) {
        ++out.failures;
      }
    }
  });

  Sa2Result result;
  for (auto& u : units) {
    result.failures += u.failures;
    std::move(u.records.begin(), u.records.end(), std::back_inserter(result.records));
  }
  check_failures(result.failures, config.base_vectors * config.perturbations, "SA2");
  return result;
}

BinnedReport bin_values(std::span<const double> measure, std::span<const double> mae_values,
                        std::size_t bins) {
  if (measure.size() != mae_values.size()) throw InputError("measure and MAE columns differ in length");
  if (bins < 2) throw InputError("at least 2 bins are required");
  if (measure.size() < bins) {
    throw InputError("binning needs at least " + std::to_string(bins) + " records, got " +
                     std::to_string(measure.size()));
  }
  for (double v : measure) {
    if (!std::isfinite(v)) throw InputError("measure column contains a non-finite value");
  }
  std::vector<double> sorted(measure.begin(), measure.end());
  std::sort(sorted.begin(), sorted.end());
  if (sorted.front() == sorted.back()) {
    throw InputError("degenerate measure: all values are equal, quantile edges collapse to a single bin");
  }

  std::vector<double> edges(bins - 1);
  for (std::size_t k = 1; k < bins; ++k) {
    edges[k - 1] = sorted_quantile(sorted, static_cast<double>(k) / static_cast<double>(bins));
  }

  std::vector<std::vector<double>> bin_mae(bins);
  std::vector<double> bin_sum(bins, 0.0);
  for (std::size_t r = 0; r < measure.size(); ++r) {
    const auto idx = static_cast<std::size_t>(std::upper_bound(edges.begin(), edges.end(), measure[r]) -
                                              edges.begin());
    bin_mae[idx].push_back(mae_values[r]);
    bin_sum[idx] += measure[r];
  }

  BinnedReport report;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t b = 0; b < bins; ++b) {
    BinnedReport::Bin bin{};
    bin.index = b + 1;
    bin.lower = b == 0 ? std::min(0.0, sorted.front()) : edges[b - 1];
    if (b == 0 && sorted.front() < 0.0) bin.lower = -std::numeric_limits<double>::infinity();
    bin.upper = b + 1 == bins ? std::numeric_limits<double>::infinity() : edges[b];
    auto& maes = bin_mae[b];
    bin.count = maes.size();
    if (maes.empty()) {
      bin.mean_measure = nan;
      bin.mae_quantiles.fill(nan);
      bin.mean_mae = nan;
    } else {
      std::sort(maes.begin(), maes.end());
      bin.mean_measure = bin_sum[b] / static_cast<double>(maes.size());
      for (std::size_t q = 0; q < kReportQuantiles.size(); ++q) {
        bin.mae_quantiles[q] = sorted_quantile(maes, kReportQuantiles[q]);
      }
      bin.mean_mae = std::accumulate(maes.begin(), maes.end(), 0.0) / static_cast<double>(maes.size());
    }
    report.bins.push_back(bin);
  }
  return report;
}

BinnedReport bin_records(const std::vector<Sa2Record>& records, const Sa2Config& config, Measure measure,
                         std::size_t bins) {
  const auto it = std::find(config.measures.begin(), config.measures.end(), measure);
  if (it == config.measures.end()) {
    throw InputError("measure " + std::string(measure_name(measure)) + " was not recorded");
  }
  const auto col = static_cast<std::size_t>(it - config.measures.begin());
  std::vector<double> values, maes;
  values.reserve(records.size());
  maes.reserve(records.size());
  for (const auto& r : records) {
    values.push_back(r.measures[col]);
    maes.push_back(r.mae);
  }
  return bin_values(values, maes, bins);
}

double cm_quality_score(const BinnedReport& report, QualitySeries series) {
  std::vector<double> x, y;
  for (const auto& bin : report.bins) {
    if (bin.count == 0) continue;
    x.push_back(bin.mean_measure);
    y.push_back(series == QualitySeries::mean ? bin.mean_mae
                                              : bin.mae_quantiles[static_cast<std::size_t>(series)]);
  }
  return spearman_rho(x, y);
}

}  // namespace pcmlab
