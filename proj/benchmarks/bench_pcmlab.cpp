#include <benchmark/benchmark.h>

#include <vector>

#include "pcmlab/consistency.hpp"
#include "pcmlab/pcm.hpp"
#include "pcmlab/perturbation.hpp"
#include "pcmlab/prioritization.hpp"
#include "pcmlab/random.hpp"
#include "pcmlab/simulation.hpp"

using namespace pcmlab;

namespace {

std::vector<PairwiseComparisonMatrix> noisy_matrices(std::size_t n, std::size_t count) {
  Rng rng = make_substream(5, n, 0);
  std::vector<PairwiseComparisonMatrix> out;
  for (std::size_t i = 0; i < count; ++i) {
    const auto w = random_priority_vector(n, rng);
    out.push_back(round_entries(
        perturb_entries(pcm_from_weights(w), PerturbationModel::uniform(0.5, 1.5), Region::upper_triangle, rng),
        JudgmentScale::saaty(), Region::upper_triangle));
  }
  return out;
}

void BM_Prioritize(benchmark::State& state, Method method) {
  const auto matrices = noisy_matrices(static_cast<std::size_t>(state.range(0)), 64);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(prioritize(matrices[i++ % matrices.size()], method));
  }
}

void BM_Measure(benchmark::State& state, Measure measure) {
  const auto matrices = noisy_matrices(static_cast<std::size_t>(state.range(0)), 64);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(compute_measure(measure, matrices[i++ % matrices.size()]));
  }
}

void BM_Sa2(benchmark::State& state) {
  Sa2Config config;
  config.base_vectors = 20;
  config.measures = {Measure::cm_lti2, Measure::ci_rev};
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_sa2(config, 1));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(config.base_vectors * config.perturbations));
}

}  // namespace

BENCHMARK_CAPTURE(BM_Prioritize, rev, Method::rev)->Arg(4)->Arg(9);
BENCHMARK_CAPTURE(BM_Prioritize, llsm, Method::llsm)->Arg(4)->Arg(9);
BENCHMARK_CAPTURE(BM_Prioritize, lua, Method::lua)->Arg(4)->Arg(9);
BENCHMARK_CAPTURE(BM_Prioritize, srdm, Method::srdm)->Arg(4)->Arg(9);
BENCHMARK_CAPTURE(BM_Prioritize, sncs, Method::sncs)->Arg(4)->Arg(9);
BENCHMARK_CAPTURE(BM_Measure, ci_rev, Measure::ci_rev)->Arg(4)->Arg(9);
BENCHMARK_CAPTURE(BM_Measure, k_ti, Measure::k_ti)->Arg(4)->Arg(9);
BENCHMARK_CAPTURE(BM_Measure, cm_lti2, Measure::cm_lti2)->Arg(4)->Arg(9);
BENCHMARK(BM_Sa2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
