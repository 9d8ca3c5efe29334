#pragma once

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

#include "pcmlab/pcm.hpp"
#include "pcmlab/prioritization.hpp"

namespace pcmlab {

/// (alpha, beta, chi) = (a_ik, a_ij, a_kj) for distinct i, k, j.
struct Triad {
  double alpha;
  double beta;
  double chi;
  std::size_t i;
  std::size_t k;
  std::size_t j;
};

/// Reciprocal mode: one triad per i < k < j. Arbitrary mode: every ordered
/// triple of distinct indices. Throws InputError for n < 3.
std::vector<Triad> enumerate_triads(const PairwiseComparisonMatrix& m);

/// min(|1 - beta/(alpha chi)|, |1 - alpha chi/beta|)
double triad_ti(const Triad& t);
/// order 1: |ln(alpha chi / beta)|; order 2: ln^2(alpha chi / beta)
double lti(const Triad& t, int order);

/// (lambda_max - n) / (n - 1); negative values are possible for arbitrary matrices.
double ci_rev(const PairwiseComparisonMatrix& m);
double ci_llsm(const PairwiseComparisonMatrix& m);
double ci_lua(const PairwiseComparisonMatrix& m, const OptimizerSettings& opt = {});
double ci_srdm(const PairwiseComparisonMatrix& m, const OptimizerSettings& opt = {});

/// Max TI over upper-triangle triads. Reciprocal matrices only.
double koczkodaj_k(const PairwiseComparisonMatrix& m);
/// Mean TI over the mode's triad set.
double grzybowski_a(const PairwiseComparisonMatrix& m);
/// Mean LTI of `order` over the mode's triad set.
double a_lti(const PairwiseComparisonMatrix& m, int order);
/// MEAN[LTI2] / (1 + MAX[LTI2]) over the mode's triad set.
double cm_lti2(const PairwiseComparisonMatrix& m);

enum class Measure { ci_rev, ci_llsm, ci_lua, ci_srdm, k_ti, a_ti, a_lti1, a_lti2, cm_lti2 };

inline constexpr std::array<Measure, 9> kAllMeasures = {
    Measure::ci_rev, Measure::ci_llsm, Measure::ci_lua,  Measure::ci_srdm, Measure::k_ti,
    Measure::a_ti,   Measure::a_lti1,  Measure::a_lti2, Measure::cm_lti2};

/// Column-safe identifiers: CI_REV, CI_LLSM, CI_LUA, CI_SRDM, K_TI, A_TI, A_LTI1, A_LTI2, CM_LTI2.
std::string_view measure_name(Measure m);
Measure parse_measure(std::string_view text);
bool measure_is_triad_based(Measure m);

double compute_measure(Measure measure, const PairwiseComparisonMatrix& m,
                       const OptimizerSettings& opt = {});

}  // namespace pcmlab
