#include "pcmlab/perturbation.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <functional>
#include <sstream>

#include "pcmlab/error.hpp"
#include "pcmlab/judgment_scale.hpp"

namespace pcmlab {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kInvSqrt2Pi = 0.3989422804014327;

double normal_pdf(double z) { return std::isinf(z) ? 0.0 : kInvSqrt2Pi * std::exp(-0.5 * z * z); }

// P(lo < Z < hi) for standard normal Z, accurate in both tails.
double normal_mass(double lo, double hi) {
  if (lo >= 0.0) return 0.5 * (std::erfc(lo / kSqrt2) - std::erfc(hi / kSqrt2));
  if (hi <= 0.0) return 0.5 * (std::erfc(-hi / kSqrt2) - std::erfc(-lo / kSqrt2));
  return 1.0 - 0.5 * std::erfc(-lo / kSqrt2) - 0.5 * std::erfc(hi / kSqrt2);
}

// P(x_lo < X < x_hi) for X ~ Gamma(shape, 1), taken from the tail that avoids cancellation.
double gamma_mass(double shape, double x_lo, double x_hi) {
  if (x_hi <= 0.0) return 0.0;
  if (x_lo > shape) {
    const double q_hi = std::isinf(x_hi) ? 0.0 : boost::math::gamma_q(shape, x_hi);
    return boost::math::gamma_q(shape, x_lo) - q_hi;
  }
  const double p_lo = x_lo <= 0.0 ? 0.0 : boost::math::gamma_p(shape, x_lo);
  const double p_hi = std::isinf(x_hi) ? 1.0 : boost::math::gamma_p(shape, x_hi);
  return p_hi - p_lo;
}

double gamma_mean(double shape, double scale, double a, double b) {
  const double mass = gamma_mass(shape, a / scale, b / scale);
  if (!(mass > 0.0)) return a / scale > shape ? a : b;
  const double upper = gamma_mass(shape + 1.0, a / scale, b / scale);
  return shape * scale * upper / mass;
}

double lognormal_mean(double mu, double sigma, double a, double b) {
  const double la = a > 0.0 ? std::log(a) : -PerturbationModel::kInfinity;
  const double lb = std::log(b);
  const double mass = normal_mass((la - mu) / sigma, (lb - mu) / sigma);
  const double shifted = normal_mass((la - mu - sigma * sigma) / sigma, (lb - mu - sigma * sigma) / sigma);
  return std::exp(mu + 0.5 * sigma * sigma) * shifted / mass;
}

double normal_mean(double mu, double sigma, double a, double b) {
  const double za = (a - mu) / sigma;
  const double zb = (b - mu) / sigma;
  return mu + sigma * (normal_pdf(za) - normal_pdf(zb)) / normal_mass(za, zb);
}

// Solves mean(x) = 1 for increasing `mean` on [lo, hi] by bisection.
double solve_unit_mean(const std::function<double(double)>& mean, double lo, double hi,
                       const char* what) {
  double flo = mean(lo) - 1.0;
  double fhi = mean(hi) - 1.0;
  if (!(flo < 0.0 && fhi > 0.0)) {
    throw ConfigError("perturbation", std::string("cannot centre ") + what + " at mean 1 on this support");
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = mean(mid) - 1.0;
    if (fm < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-15 * std::max(1.0, std::abs(mid))) break;
  }
  return 0.5 * (lo + hi);
}

void check_support(double a, double b, bool allow_zero_lower) {
  if (!(a >= 0.0) || (!allow_zero_lower && !(a > 0.0))) {
    throw ConfigError("perturbation", "support must be strictly positive (lower bound > 0)");
  }
  if (!(b > a)) throw ConfigError("perturbation", "support upper bound must exceed lower bound");
}

void check_unit_inside(double a, double b) {
  if (!(a < 1.0 && 1.0 < b)) {
    throw ConfigError("perturbation", "support must contain 1 in its interior to centre the law at 1");
  }
}

}  // namespace

PerturbationModel PerturbationModel::uniform(double lower, double upper) {
  if (!(lower > 0.0) || !std::isfinite(upper) || upper < lower) {
    throw ConfigError("perturbation", "uniform support must satisfy 0 < lower <= upper < inf");
  }
  PerturbationModel m;
  m.distribution_ = Distribution::uniform;
  m.lower_ = lower;
  m.upper_ = upper;
  return m;
}

PerturbationModel PerturbationModel::gamma(double shape, double lower, double upper) {
  if (!(shape > 0.0)) throw ConfigError("perturbation", "gamma shape must be > 0");
  check_support(lower, upper, true);
  check_unit_inside(lower, upper);
  PerturbationModel m;
  m.distribution_ = Distribution::gamma;
  m.lower_ = lower;
  m.upper_ = upper;
  m.shape_ = shape;
  const double base = 1.0 / shape;
  m.location_ = solve_unit_mean([&](double s) { return gamma_mean(shape, s, lower, upper); },
                                base * 1e-3, base * 1e3, "gamma");
  return m;
}

PerturbationModel PerturbationModel::lognormal(double sigma, double lower, double upper) {
  if (!(sigma > 0.0)) throw ConfigError("perturbation", "log-normal sigma must be > 0");
  check_support(lower, upper, true);
  check_unit_inside(lower, upper);
  PerturbationModel m;
  m.distribution_ = Distribution::lognormal;
  m.lower_ = lower;
  m.upper_ = upper;
  m.shape_ = sigma;
  const double centre = -0.5 * sigma * sigma;
  m.location_ = solve_unit_mean([&](double mu) { return lognormal_mean(mu, sigma, lower, upper); },
                                centre - 8.0 * sigma, centre + 8.0 * sigma, "log-normal");
  return m;
}

PerturbationModel PerturbationModel::truncated_normal(double sigma, double lower, double upper) {
  if (!(sigma > 0.0)) throw ConfigError("perturbation", "normal sigma must be > 0");
  check_support(lower, upper, false);
  if (!std::isfinite(upper)) throw ConfigError("perturbation", "truncated normal needs a finite upper bound");
  check_unit_inside(lower, upper);
  PerturbationModel m;
  m.distribution_ = Distribution::truncated_normal;
  m.lower_ = lower;
  m.upper_ = upper;
  m.shape_ = sigma;
  m.location_ = solve_unit_mean([&](double mu) { return normal_mean(mu, sigma, lower, upper); },
                                lower - 5.0 * sigma, upper + 5.0 * sigma, "truncated normal");
  return m;
}

PerturbationModel PerturbationModel::fisher_snedecor(double d1, double d2, double lower,
                                                     double upper) {
  if (!(d1 > 0.0) || !(d2 > 0.0)) throw ConfigError("perturbation", "F degrees of freedom must be > 0");
  check_support(lower, upper, true);
  PerturbationModel m;
  m.distribution_ = Distribution::fisher_snedecor;
  m.lower_ = lower;
  m.upper_ = upper;
  m.shape_ = d1;
  m.shape2_ = d2;
  return m;
}

double PerturbationModel::analytic_mean() const {
  switch (distribution_) {
    case Distribution::uniform: return 0.5 * (lower_ + upper_);
    case Distribution::gamma: return gamma_mean(shape_, location_, lower_, upper_);
    case Distribution::lognormal: return lognormal_mean(location_, shape_, lower_, upper_);
    case Distribution::truncated_normal: return normal_mean(location_, shape_, lower_, upper_);
    case Distribution::fisher_snedecor:
      if (lower_ == 0.0 && std::isinf(upper_) && shape2_ > 2.0) return shape2_ / (shape2_ - 2.0);
      return std::nan("");
  }
  return std::nan("");
}

std::string PerturbationModel::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (distribution_) {
    case Distribution::uniform: os << "uniform"; break;
    case Distribution::gamma: os << "gamma(shape=" << shape_ << ")"; break;
    case Distribution::lognormal: os << "lognormal(sigma=" << shape_ << ")"; break;
    case Distribution::truncated_normal: os << "truncated-normal(sigma=" << shape_ << ")"; break;
    case Distribution::fisher_snedecor: os << "fisher-snedecor(" << shape_ << "," << shape2_ << ")"; break;
  }
  os << "[" << lower_ << "," << upper_ << "]";
  if (draw_mode_ == DrawMode::shared) os << " shared";
  return os.str();
}

double sample_factor(const PerturbationModel& model, Rng& rng) {
  using D = PerturbationModel::Distribution;
  const double a = model.lower();
  const double b = model.upper();
  if (model.distribution() == D::uniform) {
    if (model.is_constant()) return a;
    return std::uniform_real_distribution<double>(a, b)(rng);
  }

  auto draw = [&]() -> double {
    switch (model.distribution()) {
      case D::gamma: return std::gamma_distribution<double>(model.shape(), model.location())(rng);
      case D::lognormal:
        return std::lognormal_distribution<double>(model.location(), model.shape())(rng);
      case D::truncated_normal:
        return std::normal_distribution<double>(model.location(), model.shape())(rng);
      case D::fisher_snedecor:
        return std::fisher_f_distribution<double>(model.shape(), model.shape2())(rng);
      case D::uniform: break;
    }
    return a;
  };

  for (long attempt = 0; attempt < PerturbationModel::kRejectionBudget; ++attempt) {
    const double x = draw();
    if (x > 0.0 && x >= a && x <= b) return x;
  }
  throw ConfigError("perturbation", "rejection budget exhausted for " + model.describe());
}

PairwiseComparisonMatrix perturb_entries(const PairwiseComparisonMatrix& m,
                                         const PerturbationModel& model, Region region, Rng& rng) {
  const std::size_t n = m.size();
  std::vector<double> a(m.data().begin(), m.data().end());
  const bool shared = model.draw_mode() == PerturbationModel::DrawMode::shared;
  const double common = shared ? sample_factor(model, rng) : 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (region == Region::upper_triangle && j < i) continue;
      a[i * n + j] *= shared ? common : sample_factor(model, rng);
    }
  }
  return PairwiseComparisonMatrix(n, std::move(a), Reciprocity::arbitrary);
}

PairwiseComparisonMatrix round_entries(const PairwiseComparisonMatrix& m, const JudgmentScale& scale,
                                       Region region) {
  const std::size_t n = m.size();
  std::vector<double> a(m.data().begin(), m.data().end());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (region == Region::upper_triangle && j < i) continue;
      a[i * n + j] = scale.round(a[i * n + j]);
    }
  }
  PairwiseComparisonMatrix rounded(n, std::move(a), Reciprocity::arbitrary);
  return region == Region::upper_triangle ? enforce_reciprocity(rounded) : rounded;
}

}  // namespace pcmlab
