#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace pcmlab::detail {

struct MinimizeOutcome {
  std::vector<double> x;
  double f = 0.0;
  double grad_norm = 0.0;  // infinity norm
  int iterations = 0;
  bool converged = false;
};

// f(x, grad) -> value; grad is resized by the caller to x.size().
using Objective = std::function<double(const std::vector<double>&, std::vector<double>&)>;

struct MinimizeSettings {
  double objective_tolerance = 1e-14;
  int max_iterations = 10'000;
  double gradient_tolerance = 1e-10;
  // Accepted as converged when the line search stalls at machine precision.
  double stall_gradient_tolerance = 1e-7;
  double max_step = 4.0;
  int polish_steps = 3;
};

inline constexpr double kEpsilon = std::numeric_limits<double>::epsilon();

inline double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Solves a x = b in place by Gaussian elimination with partial pivoting.
inline bool solve_dense(std::vector<double> a, std::vector<double>& b) {
  const std::size_t d = b.size();
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < d; ++r) {
      if (std::abs(a[r * d + c]) > std::abs(a[p * d + c])) p = r;
    }
    if (!(std::abs(a[p * d + c]) > 0.0)) return false;
    if (p != c) {
      for (std::size_t k = 0; k < d; ++k) std::swap(a[c * d + k], a[p * d + k]);
      std::swap(b[c], b[p]);
    }
    for (std::size_t r = c + 1; r < d; ++r) {
      const double m = a[r * d + c] / a[c * d + c];
      for (std::size_t k = c; k < d; ++k) a[r * d + k] -= m * a[c * d + k];
      b[r] -= m * b[c];
    }
  }
  for (std::size_t c = d; c-- > 0;) {
    double acc = b[c];
    for (std::size_t k = c + 1; k < d; ++k) acc -= a[c * d + k] * b[k];
    b[c] = acc / a[c * d + c];
  }
  return true;
}

// Newton steps on a finite-difference Hessian of the analytic gradient,
// kept only while they shrink the gradient without raising f beyond rounding.
inline void newton_polish(const Objective& objective, std::vector<double>& x, double& f, std::vector<double>& g,
                          const MinimizeSettings& s) {
  const std::size_t d = x.size();
  std::vector<double> h(d * d), gp(d), gm(d), xt(d), gt(d);
  for (int step = 0; step < s.polish_steps && inf_norm(g) > s.gradient_tolerance; ++step) {
    for (std::size_t k = 0; k < d; ++k) {
      xt = x;
      xt[k] = x[k] + 1e-5;
      objective(xt, gp);
      xt[k] = x[k] - 1e-5;
      objective(xt, gm);
      for (std::size_t i = 0; i < d; ++i) h[i * d + k] = (gp[i] - gm[i]) / 2e-5;
    }
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t k = i + 1; k < d; ++k) h[i * d + k] = h[k * d + i] = 0.5 * (h[i * d + k] + h[k * d + i]);
    }
    std::vector<double> p(g.size());
    for (std::size_t i = 0; i < d; ++i) p[i] = -g[i];
    if (!solve_dense(h, p)) return;
    for (std::size_t i = 0; i < d; ++i) xt[i] = x[i] + p[i];
    const double ft = objective(xt, gt);
    if (!std::isfinite(ft) || ft > f + 8.0 * kEpsilon * std::abs(f) || !(inf_norm(gt) < inf_norm(g))) return;
    x = xt;
    g = gt;
    f = std::min(f, ft);
  }
}

// Dense BFGS on the inverse Hessian with Armijo backtracking.
inline MinimizeOutcome bfgs_minimize(const Objective& objective, std::vector<double> x,
                                     const MinimizeSettings& s) {
  const std::size_t d = x.size();
  MinimizeOutcome out;
  std::vector<double> g(d), g_new(d), dir(d), x_new(d), step(d), y(d), hy(d);
  double f = objective(x, g);

  std::vector<double> h(d * d, 0.0);
  auto reset = [&] {
    std::fill(h.begin(), h.end(), 0.0);
    for (std::size_t i = 0; i < d; ++i) h[i * d + i] = 1.0;
  };
  reset();
  bool h_is_identity = true;

  int it = 0;
  bool converged = false;
  for (; it < s.max_iterations; ++it) {
    const double gn = inf_norm(g);
    if (gn <= s.gradient_tolerance || f == 0.0) {
      converged = true;
      break;
    }

    double slope = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < d; ++j) acc -= h[i * d + j] * g[j];
      dir[i] = acc;
      slope += acc * g[i];
    }
    if (!(slope < 0.0)) {
      reset();
      h_is_identity = true;
      for (std::size_t i = 0; i < d; ++i) dir[i] = -g[i];
      slope = 0.0;
      for (std::size_t i = 0; i < d; ++i) slope -= g[i] * g[i];
    }

    double t = 1.0;
    const double dn = inf_norm(dir);
    if (dn * t > s.max_step) t = s.max_step / dn;

    double f_new = f;
    bool accepted = false;
    for (int k = 0; k < 80; ++k) {
      for (std::size_t i = 0; i < d; ++i) x_new[i] = x[i] + t * dir[i];
      f_new = objective(x_new, g_new);
      if (std::isfinite(f_new) && f_new <= f + 1e-4 * t * slope) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }

    if (!accepted) {
      if (!h_is_identity) {
        reset();
        h_is_identity = true;
        continue;
      }
      converged = gn <= s.stall_gradient_tolerance;
      break;
    }

    double sy = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      step[i] = x_new[i] - x[i];
      y[i] = g_new[i] - g[i];
      sy += step[i] * y[i];
    }
    if (sy > 1e-300) {
      // H <- (I - r s y^T) H (I - r y s^T) + r s s^T
      const double r = 1.0 / sy;
      double yhy = 0.0;
      for (std::size_t i = 0; i < d; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < d; ++j) acc += h[i * d + j] * y[j];
        hy[i] = acc;
        yhy += y[i] * acc;
      }
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
          h[i * d + j] += -r * (hy[i] * step[j] + step[i] * hy[j]) +
                          (r * r * yhy + r) * step[i] * step[j];
        }
      }
      h_is_identity = false;
    }

    const double decrease = f - f_new;
    x.swap(x_new);
    g.swap(g_new);
    f = f_new;
    if (decrease <= s.objective_tolerance * std::max(1.0, std::abs(f)) &&
        inf_norm(g) <= s.stall_gradient_tolerance) {
      converged = true;
      ++it;
      break;
    }
  }

  if (converged) newton_polish(objective, x, f, g, s);

  out.x = std::move(x);
  out.f = f;
  out.grad_norm = inf_norm(g);
  out.iterations = it;
  out.converged = converged;
  return out;
}

}  // namespace pcmlab::detail
