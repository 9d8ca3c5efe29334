#include "pcmlab/prioritization.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>

#include "detail/quasi_newton.hpp"
#include "pcmlab/error.hpp"

namespace pcmlab {

std::string_view method_name(Method m) {
  switch (m) {
    case Method::rev: return "REV";
    case Method::llsm: return "LLSM";
    case Method::lua: return "LUA";
    case Method::srdm: return "SRDM";
    case Method::sncs: return "SNCS";
  }
  return "?";
}

Method parse_method(std::string_view text) {
  std::string up(text);
  std::transform(up.begin(), up.end(), up.begin(), [](unsigned char c) { return std::toupper(c); });
  for (Method m : kAllMethods) {
    if (method_name(m) == up) return m;
  }
  throw InputError("unknown prioritization method '" + std::string(text) +
                   "' (expected REV, LLSM, LUA, SRDM or SNCS)");
}

void OptimizerSettings::validate() const {
  if (!(objective_tolerance > 0.0)) throw ConfigError("optimizer.tolerance", "must be > 0");
  if (max_iterations < 1) throw ConfigError("optimizer.max_iterations", "must be >= 1");
  if (restarts < 1 || restarts > 2) throw ConfigError("optimizer.restarts", "must be 1 or 2");
}

EigenResult rev_priority(const PairwiseComparisonMatrix& m, int max_iterations) {
  const std::size_t n = m.size();
  std::vector<double> w(n, 1.0 / static_cast<double>(n));
  for (int it = 1; it <= max_iterations; ++it) {
    std::vector<double> next = m.multiply(w);
    const double lambda = std::accumulate(next.begin(), next.end(), 0.0);
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      next[i] /= lambda;
      change = std::max(change, std::abs(next[i] - w[i]));
    }
    w.swap(next);
    if (change < 1e-12) {
      // Rayleigh-style quotient e^T M w / e^T w on the settled iterate.
      const std::vector<double> mw = m.multiply(w);
      const double lam = std::accumulate(mw.begin(), mw.end(), 0.0) /
                         std::accumulate(w.begin(), w.end(), 0.0);
      double residual = 0.0;
      for (std::size_t i = 0; i < n; ++i) residual = std::max(residual, std::abs(mw[i] - lam * w[i]));
      if (residual <= 1e-10 * std::max(1.0, lam)) {
        return {PriorityVector::normalized(std::move(w)), lam, it};
      }
    }
  }
  throw NumericalError("power iteration did not converge in " + std::to_string(max_iterations) +
                           " iterations",
                       w);
}

PriorityVector llsm_priority(const PairwiseComparisonMatrix& m) {
  const std::size_t n = m.size();
  std::vector<double> logs(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (double a : m.row(i)) acc += std::log(a);
    logs[i] = acc / static_cast<double>(n);
  }
  const double top = *std::max_element(logs.begin(), logs.end());
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = std::exp(logs[i] - top);
  return PriorityVector::normalized(std::move(w));
}

PriorityVector sncs_priority(const PairwiseComparisonMatrix& m) {
  const std::size_t n = m.size();
  std::vector<double> colsum(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) colsum[j] += m(i, j);
  }
  std::vector<double> w(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += m(i, j) / colsum[j];
    w[i] = acc / static_cast<double>(n);
  }
  return PriorityVector::normalized(std::move(w));
}

namespace {

enum class Loss { lua, srdm };

// s_i = sum_j a_ij w_j / (n w_i)
std::vector<double> balance_ratios(const PairwiseComparisonMatrix& m, std::span<const double> w) {
  const std::size_t n = m.size();
  std::vector<double> s = m.multiply(w);
  for (std::size_t i = 0; i < n; ++i) s[i] /= static_cast<double>(n) * w[i];
  return s;
}

double loss_value(Loss loss, double s) {
  if (loss == Loss::lua) {
    const double l = std::log(s);
    return l * l;
  }
  return (s - 1.0) * (s - 1.0);
}

double loss_slope(Loss loss, double s) {
  return loss == Loss::lua ? 2.0 * std::log(s) / s : 2.0 * (s - 1.0);
}

double objective_at(Loss loss, const PairwiseComparisonMatrix& m, std::span<const double> w) {
  if (w.size() != m.size()) throw InputError("vector length mismatch");
  for (double x : w) {
    if (!(x > 0.0)) throw InputError("objective needs a strictly positive vector");
  }
  double f = 0.0;
  for (double s : balance_ratios(m, w)) f += loss_value(loss, s);
  return f;
}

// Log-coordinates with the last coordinate pinned at 0: w_k = exp(v_k).
detail::Objective make_objective(Loss loss, const PairwiseComparisonMatrix& m) {
  return [loss, &m](const std::vector<double>& v, std::vector<double>& grad) {
    const std::size_t n = m.size();
    const double top = std::max(0.0, *std::max_element(v.begin(), v.end()));
    std::vector<double> w(n);
    for (std::size_t k = 0; k + 1 < n; ++k) w[k] = std::exp(v[k] - top);
    w[n - 1] = std::exp(-top);
    for (double x : w) {
      if (!(x > 0.0)) return std::numeric_limits<double>::infinity();
    }
    const std::vector<double> s = balance_ratios(m, w);
    double f = 0.0;
    std::vector<double> slope(n);
    for (std::size_t i = 0; i < n; ++i) {
      f += loss_value(loss, s[i]);
      slope[i] = loss_slope(loss, s[i]);
    }
    const double nn = static_cast<double>(n);
    for (std::size_t k = 0; k + 1 < n; ++k) {
      double acc = -slope[k] * s[k];
      for (std::size_t i = 0; i < n; ++i) acc += slope[i] * m(i, k) * w[k] / (nn * w[i]);
      grad[k] = acc;
    }
    return f;
  };
}

std::vector<double> to_log_coordinates(std::span<const double> w) {
  const std::size_t n = w.size();
  std::vector<double> v(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) v[k] = std::log(w[k]) - std::log(w[n - 1]);
  return v;
}

std::vector<double> from_log_coordinates(const std::vector<double>& v) {
  const double top = std::max(0.0, *std::max_element(v.begin(), v.end()));
  std::vector<double> w(v.size() + 1);
  for (std::size_t k = 0; k < v.size(); ++k) w[k] = std::exp(v[k] - top);
  w.back() = std::exp(-top);
  return w;
}

OptimizationResult minimize_loss(Loss loss, const PairwiseComparisonMatrix& m,
                                 const OptimizerSettings& opt) {
  opt.validate();
  const std::size_t n = m.size();
  const PriorityVector warm = llsm_priority(m);

  std::vector<std::vector<double>> starts{to_log_coordinates(warm.values())};
  if (opt.restarts >= 2) starts.emplace_back(n - 1, 0.0);

  detail::MinimizeSettings settings;
  settings.objective_tolerance = opt.objective_tolerance;
  settings.max_iterations = opt.max_iterations;
  const auto objective = make_objective(loss, m);

  std::optional<detail::MinimizeOutcome> best;
  std::optional<detail::MinimizeOutcome> best_failed;
  for (auto& start : starts) {
    detail::MinimizeOutcome r = detail::bfgs_minimize(objective, start, settings);
    auto& slot = r.converged ? best : best_failed;
    if (!slot || r.f < slot->f) slot = std::move(r);
  }
  const char* name = loss == Loss::lua ? "LUA" : "SRDM";
  if (!best) {
    throw NumericalError(std::string(name) + " minimization did not converge (gradient norm " +
                             std::to_string(best_failed->grad_norm) + ")",
                         PriorityVector::normalized(from_log_coordinates(best_failed->x)).to_vector());
  }
  PriorityVector w = PriorityVector::normalized(from_log_coordinates(best->x));
  const double f = objective_at(loss, m, w.values());
  return {std::move(w), f, best->iterations};
}

}  // namespace

double lua_objective(const PairwiseComparisonMatrix& m, std::span<const double> w) {
  return objective_at(Loss::lua, m, w);
}

double srdm_objective(const PairwiseComparisonMatrix& m, std::span<const double> w) {
  return objective_at(Loss::srdm, m, w);
}

OptimizationResult lua_priority(const PairwiseComparisonMatrix& m, const OptimizerSettings& opt) {
  return minimize_loss(Loss::lua, m, opt);
}

OptimizationResult srdm_priority(const PairwiseComparisonMatrix& m, const OptimizerSettings& opt) {
  return minimize_loss(Loss::srdm, m, opt);
}

PriorityVector prioritize(const PairwiseComparisonMatrix& m, Method method,
                          const OptimizerSettings& opt) {
  switch (method) {
    case Method::rev: return rev_priority(m).vector;
    case Method::llsm: return llsm_priority(m);
    case Method::lua: return lua_priority(m, opt).vector;
    case Method::srdm: return srdm_priority(m, opt).vector;
    case Method::sncs: return sncs_priority(m);
  }
  throw InputError("unknown method");
}

}  // namespace pcmlab
