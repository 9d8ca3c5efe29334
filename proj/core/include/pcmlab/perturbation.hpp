#pragma once

#include <limits>
#include <string>

#include "pcmlab/judgment_scale.hpp"
#include "pcmlab/pcm.hpp"
#include "pcmlab/random.hpp"

namespace pcmlab {

/// Distribution of the multiplicative judgment error e in x_ij = e_ij * w_ij.
///
/// Gamma, log-normal and truncated-normal models are built with a free
/// location parameter solved so that the mean of the truncated law is 1
/// (gamma: scale; log-normal: mu; normal: mu). Truncation is by rejection.
class PerturbationModel {
 public:
  enum class Distribution { uniform, gamma, lognormal, truncated_normal, fisher_snedecor };
  enum class DrawMode { per_entry, shared };

  static constexpr double kInfinity = std::numeric_limits<double>::infinity();
  static constexpr long kRejectionBudget = 1'000'000;

  static PerturbationModel uniform(double lower, double upper);
  static PerturbationModel constant(double value) { return uniform(value, value); }
  static PerturbationModel gamma(double shape, double lower = 0.0, double upper = kInfinity);
  static PerturbationModel lognormal(double sigma, double lower = 0.0, double upper = kInfinity);
  static PerturbationModel truncated_normal(double sigma, double lower, double upper);
  static PerturbationModel fisher_snedecor(double d1, double d2, double lower = 0.0,
                                           double upper = kInfinity);

  PerturbationModel with_draw_mode(DrawMode mode) const {
    PerturbationModel m = *this;
    m.draw_mode_ = mode;
    return m;
  }

  Distribution distribution() const noexcept { return distribution_; }
  DrawMode draw_mode() const noexcept { return draw_mode_; }
  double lower() const noexcept { return lower_; }
  double upper() const noexcept { return upper_; }
  /// Gamma shape, log-normal / normal sigma, or F numerator dof.
  double shape() const noexcept { return shape_; }
  /// F denominator dof (0 otherwise).
  double shape2() const noexcept { return shape2_; }
  /// Solved location parameter (gamma scale, log-normal mu, normal mu).
  double location() const noexcept { return location_; }
  bool is_constant() const noexcept {
    return distribution_ == Distribution::uniform && lower_ == upper_;
  }

  /// Mean of the (truncated) law, evaluated in closed form.
  double analytic_mean() const;

  std::string describe() const;

 private:
  PerturbationModel() = default;

  Distribution distribution_ = Distribution::uniform;
  DrawMode draw_mode_ = DrawMode::per_entry;
  double lower_ = 1.0;
  double upper_ = 1.0;
  double shape_ = 0.0;
  double shape2_ = 0.0;
  double location_ = 0.0;
};

/// One factor from the model; throws ConfigError when the rejection budget runs out.
double sample_factor(const PerturbationModel& model, Rng& rng);

enum class Region { upper_triangle, off_diagonal };

/// Multiplies each entry of `region` by a factor drawn from `model` (one per
/// entry, or one per call in shared mode). The result is tagged arbitrary.
PairwiseComparisonMatrix perturb_entries(const PairwiseComparisonMatrix& m,
                                         const PerturbationModel& model, Region region, Rng& rng);

/// Rounds every entry of `region` to `scale`, then mirrors the upper triangle
/// when `region` is the upper triangle.
PairwiseComparisonMatrix round_entries(const PairwiseComparisonMatrix& m, const JudgmentScale& scale,
                                       Region region);

}  // namespace pcmlab
