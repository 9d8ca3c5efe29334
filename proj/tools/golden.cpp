#include "golden.hpp"

#include <cmath>
#include <sstream>

#include "pcmlab/consistency.hpp"
#include "pcmlab/metrics.hpp"
#include "pcmlab/pcm.hpp"
#include "pcmlab/perturbation.hpp"
#include "pcmlab/prioritization.hpp"

namespace pcmlab::tools {

namespace {

const std::vector<double> kTrue = {7.0 / 20, 1.0 / 4, 1.0 / 4, 3.0 / 20};

PairwiseComparisonMatrix matrix_rx() {
  return PairwiseComparisonMatrix::from_rows(
      {{1, 1, 1, 2}, {1, 1, 1, 2}, {1, 1, 1, 2}, {0.5, 0.5, 0.5, 1}});
}

PairwiseComparisonMatrix matrix_ax() {
  return PairwiseComparisonMatrix::from_rows(
      {{1, 1, 1, 2}, {0.5, 1, 1, 2}, {0.5, 1, 1, 2}, {0.5, 0.5, 0.5, 1}});
}

std::string near(double got, double want, double tol) {
  if (std::abs(got - want) <= tol) return {};
  std::ostringstream os;
  os.precision(10);
  os << "got " << got << ", expected " << want << " +/- " << tol;
  return os.str();
}

std::string near(std::span<const double> got, const std::vector<double>& want, double tol) {
  for (std::size_t i = 0; i < want.size(); ++i) {
    if (std::string d = near(got[i], want[i], tol); !d.empty()) return "entry " + std::to_string(i) + ": " + d;
  }
  return {};
}

GoldenCheck vector_check(std::string name, PairwiseComparisonMatrix (*m)(), Method method,
                         std::vector<double> want, double tol) {
  return {std::move(name), [=] { return near(prioritize(m(), method).values(), want, tol); }};
}

GoldenCheck value_check(std::string name, std::function<double()> f, double want, double tol) {
  return {std::move(name), [=] { return near(f(), want, tol); }};
}

}  // namespace

std::vector<GoldenCheck> golden_checks() {
  const std::vector<double> seventh = {2.0 / 7, 2.0 / 7, 2.0 / 7, 1.0 / 7};
  std::vector<GoldenCheck> c;

  c.push_back({"A(w) ratio matrix", [] {
                 const auto a = pcm_from_weights(PriorityVector(kTrue));
                 return near(a.row(0), {1.0, 1.4, 1.4, 7.0 / 3}, 1e-12);
               }});
  c.push_back({"A(x) from Saaty rounding", [] {
                 const auto a = pcm_from_weights(PriorityVector(kTrue));
                 const auto x = round_entries(a, JudgmentScale::saaty(), Region::off_diagonal);
                 const auto want = matrix_ax();
                 return near(x.data(), {want.data().begin(), want.data().end()}, 0.0);
               }});
  c.push_back({"R(x) from A(x) by reciprocity", [] {
                 const auto r = enforce_reciprocity(matrix_ax());
                 const auto want = matrix_rx();
                 return near(r.data(), {want.data().begin(), want.data().end()}, 0.0);
               }});
  c.push_back({"consistency predicates", []() -> std::string {
                 if (!is_consistent(matrix_rx())) return "R(x) should be consistent";
                 if (is_consistent(matrix_ax())) return "A(x) should not be consistent";
                 return {};
               }});

  for (Method m : {Method::rev, Method::lua, Method::llsm}) {
    c.push_back(vector_check("R(x) " + std::string(method_name(m)) + " vector", matrix_rx, m, seventh, 1e-6));
  }
  c.push_back(vector_check("A(x) REV vector", matrix_ax, Method::rev,
                           {0.309401, 0.267949, 0.267949, 0.154701}, 1e-5));
  c.push_back(vector_check("A(x) LUA vector", matrix_ax, Method::lua,
                           {0.306135, 0.268645, 0.268645, 0.156576}, 1e-3));
  c.push_back(vector_check("A(x) LLSM vector", matrix_ax, Method::llsm,
                           {0.314288, 0.264284, 0.264284, 0.157144}, 1e-5));

  c.push_back(value_check("R(x) CI_REV", [] { return ci_rev(matrix_rx()); }, 0.0, 1e-9));
  c.push_back(value_check("R(x) CI_LUA", [] { return ci_lua(matrix_rx()); }, 0.0, 1e-6));
  c.push_back(value_check("R(x) CI_LLSM", [] { return ci_llsm(matrix_rx()); }, 0.0, 1e-9));
  c.push_back(value_check("A(x) CI_REV", [] { return ci_rev(matrix_ax()); }, -0.0893164, 1e-5));
  c.push_back(value_check("A(x) CI_LUA", [] { return ci_lua(matrix_ax()); }, 0.0344483, 1e-3));
  c.push_back(value_check("A(x) CI_LLSM", [] { return ci_llsm(matrix_ax()); }, 0.0400378, 1e-6));

  c.push_back(value_check("R(x) MAE", [] { return mae(kTrue, prioritize(matrix_rx(), Method::llsm).values()); },
                          0.0357143, 1e-6));
  const std::pair<Method, double> ax_mae[] = {{Method::rev, 0.0202995}, {Method::lua, 0.0219326},
                                              {Method::llsm, 0.0178559}};
  for (auto [m, want] : ax_mae) {
    c.push_back(value_check("A(x) " + std::string(method_name(m)) + " MAE",
                            [m = m] { return mae(kTrue, prioritize(matrix_ax(), m).values()); }, want, 1e-6));
  }
  c.push_back(value_check("R(x) SRC",
                          [] { return spearman_rho(kTrue, prioritize(matrix_rx(), Method::rev).values(), 1e-9); },
                          0.8164966, 1e-6));
  c.push_back(value_check("A(x) SRC",
                          [] { return spearman_rho(kTrue, prioritize(matrix_ax(), Method::rev).values(), 1e-9); },
                          1.0, 1e-6));

  // R is the MSRC gap to REV over 30,000 cases.
  const std::pair<double, double> t_values[] = {{0.682300 - 0.668380, 2.411168},
                                                {0.692453 - 0.668380, 4.170636},
                                                {0.804860 - 0.792580, 2.127048},
                                                {0.808333 - 0.792580, 2.728747}};
  for (auto [r, want] : t_values) {
    std::ostringstream name;
    name.precision(7);
    name << "t-statistic " << want;
    c.push_back(value_check(name.str(), [r = r] { return t_statistic(r, 30'000).t; }, want, 1e-4));
  }
  c.push_back({"t-statistic alpha levels", []() -> std::string {
                 if (significance_level(2.411168) != 0.01) return "2.411168 should reach alpha 0.01";
                 if (significance_level(2.127048) != 0.02) return "2.127048 should reach alpha 0.02";
                 if (significance_level(0.551989).has_value()) return "0.551989 should not be significant";
                 return {};
               }});
  return c;
}

}  // namespace pcmlab::tools
