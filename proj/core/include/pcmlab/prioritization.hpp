#pragma once

#include <array>
#include <string>
#include <string_view>

#include "pcmlab/pcm.hpp"
#include "pcmlab/priority_vector.hpp"

namespace pcmlab {

enum class Method { rev, llsm, lua, srdm, sncs };

inline constexpr std::array<Method, 5> kAllMethods = {Method::llsm, Method::rev, Method::lua,
                                                      Method::srdm, Method::sncs};

std::string_view method_name(Method m);
/// Case-insensitive: "REV", "llsm", ...
Method parse_method(std::string_view text);

/// Settings for the LUA / SRDM minimizers.
struct OptimizerSettings {
  double objective_tolerance = 1e-14;
  int max_iterations = 10'000;
  /// Number of warm starts: 1 = LLSM only, 2 = LLSM and uniform.
  int restarts = 2;

  void validate() const;
};

struct EigenResult {
  PriorityVector vector;
  double lambda_max;
  int iterations;
};

struct OptimizationResult {
  PriorityVector vector;
  double objective;
  int iterations;
};

/// Principal right eigenvector by normalized power iteration.
/// Throws NumericalError (carrying the last iterate) if it does not settle.
EigenResult rev_priority(const PairwiseComparisonMatrix& m, int max_iterations = 100'000);

/// Normalized geometric means of the rows.
PriorityVector llsm_priority(const PairwiseComparisonMatrix& m);

/// Row averages of the column-normalized matrix.
PriorityVector sncs_priority(const PairwiseComparisonMatrix& m);

/// Minimizes sum_i ln^2( sum_j a_ij w_j / (n w_i) ).
OptimizationResult lua_priority(const PairwiseComparisonMatrix& m, const OptimizerSettings& opt = {});

/// Minimizes sum_i ( sum_j a_ij w_j / (n w_i) - 1 )^2.
OptimizationResult srdm_priority(const PairwiseComparisonMatrix& m, const OptimizerSettings& opt = {});

/// LUA objective at positive w (scale-free; w need not be normalized).
double lua_objective(const PairwiseComparisonMatrix& m, std::span<const double> w);
/// SRDM objective at positive w (scale-free).
double srdm_objective(const PairwiseComparisonMatrix& m, std::span<const double> w);

PriorityVector prioritize(const PairwiseComparisonMatrix& m, Method method,
                          const OptimizerSettings& opt = {});

}  // namespace pcmlab
