#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "fixtures.hpp"
#include "pcmlab/error.hpp"
#include "pcmlab/perturbation.hpp"
#include "pcmlab/prioritization.hpp"

using namespace pcmlab;
using doctest::Approx;

namespace {

void check_vector(const PriorityVector& got, const std::vector<double>& want, double tol) {
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < want.size(); ++i) CHECK(std::abs(got[i] - want[i]) <= tol);
}

using Objective = std::function<double(const PairwiseComparisonMatrix&, std::span<const double>)>;

// Grid search over the 4-simplex: step 1e-2 everywhere, then step 1e-3 around the best cell.
std::vector<double> grid_minimum(const PairwiseComparisonMatrix& m, const Objective& f) {
  std::vector<double> best(4, 0.25);
  double fbest = std::numeric_limits<double>::infinity();
  auto scan = [&](double lo0, double lo1, double lo2, double hi0, double hi1, double hi2, double step) {
    std::vector<double> w(4);
    std::vector<double> found = best;
    for (double a = lo0; a <= hi0 + 1e-12; a += step) {
      for (double b = lo1; b <= hi1 + 1e-12; b += step) {
        for (double c = lo2; c <= hi2 + 1e-12; c += step) {
          const double d = 1.0 - a - b - c;
          if (a <= 0 || b <= 0 || c <= 0 || d <= 1e-9) continue;
          w = {a, b, c, d};
          const double v = f(m, w);
          if (v < fbest) {
            fbest = v;
            found = w;
          }
        }
      }
    }
    best = found;
  };
  scan(0.01, 0.01, 0.01, 0.97, 0.97, 0.97, 1e-2);
  const std::vector<double> c = best;
  scan(c[0] - 0.02, c[1] - 0.02, c[2] - 0.02, c[0] + 0.02, c[1] + 0.02, c[2] + 0.02, 1e-3);
  return best;
}

// Central differences of a scale-free objective, projected onto the simplex tangent space.
double projected_gradient_norm(const PairwiseComparisonMatrix& m, const Objective& f, std::span<const double> w) {
  const double h = 1e-6;
  std::vector<double> g(w.size());
  std::vector<double> x(w.begin(), w.end());
  for (std::size_t k = 0; k < w.size(); ++k) {
    x[k] = w[k] + h;
    const double fp = f(m, x);
    x[k] = w[k] - h;
    const double fm = f(m, x);
    x[k] = w[k];
    g[k] = (fp - fm) / (2 * h);
  }
  double mean = 0;
  for (double v : g) mean += v / static_cast<double>(g.size());
  double norm = 0;
  for (double v : g) norm = std::max(norm, std::abs(v - mean));
  return norm;
}

}  // namespace

TEST_SUITE("prioritization") {
  TEST_CASE("method names round-trip") {
    for (Method m : kAllMethods) CHECK(parse_method(method_name(m)) == m);
    CHECK(parse_method("llsm") == Method::llsm);
    CHECK_THROWS_AS(parse_method("ahp"), InputError);
  }

  TEST_CASE("REV on the worked matrices") {
    const auto r = rev_priority(fixtures::rx());
    check_vector(r.vector, {2.0 / 7, 2.0 / 7, 2.0 / 7, 1.0 / 7}, 1e-9);
    CHECK(r.lambda_max == Approx(4.0).epsilon(1e-12));
    const auto a = rev_priority(fixtures::ax());
    check_vector(a.vector, {0.309401, 0.267949, 0.267949, 0.154701}, 1e-6);
    CHECK(a.lambda_max == Approx(2.0 + std::sqrt(3.0)).epsilon(1e-12));
  }

  TEST_CASE("REV satisfies the eigen-equation") {
    Rng rng = make_substream(21, 0, 0);
    for (int t = 0; t < 50; ++t) {
      const auto m = fixtures::noisy_reciprocal(3 + t % 7, 1.0, rng);
      const auto r = rev_priority(m);
      const auto mw = m.multiply(r.vector.values());
      for (std::size_t i = 0; i < m.size(); ++i) CHECK(std::abs(mw[i] - r.lambda_max * r.vector[i]) <= 1e-10);
      CHECK(r.lambda_max >= static_cast<double>(m.size()) - 1e-12);
    }
  }

  TEST_CASE("REV on the all-ones matrix") {
    const auto r = rev_priority(PairwiseComparisonMatrix::ones(5));
    check_vector(r.vector, std::vector<double>(5, 0.2), 1e-15);
    CHECK(r.lambda_max == Approx(5.0));
  }

  TEST_CASE("REV reports non-convergence with the last iterate") {
    try {
      (void)rev_priority(fixtures::ax(), 2);
      FAIL("expected NumericalError");
    } catch (const NumericalError& e) {
      CHECK(e.last_iterate().size() == 4);
    }
  }

  TEST_CASE("LLSM") {
    check_vector(llsm_priority(fixtures::ax()), {0.314288, 0.264284, 0.264284, 0.157144}, 1e-6);
    check_vector(llsm_priority(fixtures::rx()), {2.0 / 7, 2.0 / 7, 2.0 / 7, 1.0 / 7}, 1e-12);
  }

  TEST_CASE("LLSM closed form attains the least-squares minimum") {
    Rng rng = make_substream(22, 0, 0);
    const auto m = fixtures::noisy_reciprocal(5, 1.0, rng);
    const auto w = llsm_priority(m);
    auto f = [&](std::span<const double> x) {
      double s = 0;
      for (std::size_t i = 0; i < 5; ++i) {
        for (std::size_t j = 0; j < 5; ++j) s += std::pow(std::log(m(i, j) * x[j] / x[i]), 2);
      }
      return s;
    };
    const double f0 = f(w.values());
    std::vector<double> x(w.begin(), w.end());
    for (std::size_t k = 0; k < 5; ++k) {
      for (double d : {-1e-3, 1e-3}) {
        x[k] = w[k] * (1 + d);
        CHECK(f(x) > f0);
        x[k] = w[k];
      }
    }
  }

  TEST_CASE("LLSM rescaling") {
    Rng rng = make_substream(23, 0, 0);
    const auto m = fixtures::noisy_reciprocal(4, 0.8, rng);
    const double c = 3.0;
    std::vector<double> a(m.data().begin(), m.data().end());
    for (std::size_t j = 0; j < 4; ++j) {
      if (j == 1) continue;
      a[1 * 4 + j] *= c;
      a[j * 4 + 1] /= c;
    }
    const auto scaled = PairwiseComparisonMatrix(4, a, Reciprocity::reciprocal);
    const auto w = llsm_priority(m);
    std::vector<double> expected(w.begin(), w.end());
    expected[1] *= c;
    check_vector(llsm_priority(scaled), PriorityVector::normalized(expected).to_vector(), 1e-12);
  }

  TEST_CASE("SNCS") {
    check_vector(sncs_priority(PairwiseComparisonMatrix::ones(3)), {1.0 / 3, 1.0 / 3, 1.0 / 3}, 1e-15);
    // Column sums of A(x): 2.5, 3.5, 3.5, 7.
    const double a = (1 / 2.5 + 1 / 3.5 + 1 / 3.5 + 2 / 7.0) / 4;
    const double b = (0.5 / 2.5 + 1 / 3.5 + 1 / 3.5 + 2 / 7.0) / 4;
    const double d = (0.5 / 2.5 + 0.5 / 3.5 + 0.5 / 3.5 + 1 / 7.0) / 4;
    check_vector(sncs_priority(fixtures::ax()), {a, b, b, d}, 1e-15);
  }

  TEST_CASE("LUA on the worked matrices") {
    const auto a = lua_priority(fixtures::ax());
    check_vector(a.vector, {0.306135, 0.268645, 0.268645, 0.156576}, 1e-6);
    const auto r = lua_priority(fixtures::rx());
    check_vector(r.vector, {2.0 / 7, 2.0 / 7, 2.0 / 7, 1.0 / 7}, 1e-9);
    CHECK(r.objective <= 1e-20);
  }

  TEST_CASE("SRDM against a brute-force simplex grid") {
    const auto got = srdm_priority(fixtures::ax());
    const auto oracle = grid_minimum(fixtures::ax(), [](const auto& m, auto w) { return srdm_objective(m, w); });
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(got.vector[i] - oracle[i]) <= 1e-3);
    CHECK(got.objective <= srdm_objective(fixtures::ax(), oracle) + 1e-12);
    const auto r = srdm_priority(fixtures::rx());
    check_vector(r.vector, {2.0 / 7, 2.0 / 7, 2.0 / 7, 1.0 / 7}, 1e-9);
    CHECK(r.objective <= 1e-20);
  }

  TEST_CASE("LUA against a brute-force simplex grid") {
    const auto got = lua_priority(fixtures::ax());
    const auto oracle = grid_minimum(fixtures::ax(), [](const auto& m, auto w) { return lua_objective(m, w); });
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(got.vector[i] - oracle[i]) <= 1e-3);
  }

  TEST_CASE("optimizers beat the LLSM point and are stationary") {
    Rng rng = make_substream(24, 0, 0);
    for (int t = 0; t < 40; ++t) {
      const auto m = fixtures::noisy_reciprocal(3 + t % 6, 1.2, rng);
      const auto llsm = llsm_priority(m);
      const auto lua = lua_priority(m);
      const auto srdm = srdm_priority(m);
      CHECK(lua.objective <= lua_objective(m, llsm.values()) + 1e-12);
      CHECK(srdm.objective <= srdm_objective(m, llsm.values()) + 1e-12);
      CHECK(projected_gradient_norm(m, [](const auto& a, auto w) { return lua_objective(a, w); },
                                    lua.vector.values()) <= 1e-6);
      CHECK(projected_gradient_norm(m, [](const auto& a, auto w) { return srdm_objective(a, w); },
                                    srdm.vector.values()) <= 1e-6);
    }
  }

  TEST_CASE("all methods coincide on consistent matrices") {
    Rng rng = make_substream(25, 0, 0);
    for (int t = 0; t < 30; ++t) {
      const auto w = fixtures::random_weights(2 + t % 8, rng);
      const auto m = pcm_from_weights(w);
      for (Method method : kAllMethods) check_vector(prioritize(m, method), w.to_vector(), 1e-6);
    }
  }

  TEST_CASE("optimizer settings validation") {
    OptimizerSettings s;
    CHECK_NOTHROW(s.validate());
    s.objective_tolerance = 0;
    CHECK_THROWS_AS(s.validate(), ConfigError);
    s = {};
    s.max_iterations = 0;
    CHECK_THROWS_AS(s.validate(), ConfigError);
  }

  TEST_CASE("arbitrary-mode inputs are accepted by every method") {
    Rng rng = make_substream(26, 0, 0);
    const auto m = perturb_entries(fixtures::rx(), PerturbationModel::uniform(0.5, 1.5), Region::off_diagonal, rng);
    for (Method method : kAllMethods) {
      const auto w = prioritize(m, method);
      double s = 0;
      for (double v : w) s += v;
      CHECK(s == Approx(1.0).epsilon(1e-12));
    }
  }
}
