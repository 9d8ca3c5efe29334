#include "pcmlab/consistency.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "pcmlab/error.hpp"

namespace pcmlab {

namespace {

void require_triads(const PairwiseComparisonMatrix& m) {
  if (m.size() < 3) throw InputError("n >= 3 required (matrix has no triads)");
}

double log_ratio(const Triad& t) { return std::log(t.alpha) + std::log(t.chi) - std::log(t.beta); }

}  // namespace

std::vector<Triad> enumerate_triads(const PairwiseComparisonMatrix& m) {
  require_triads(m);
  const std::size_t n = m.size();
  std::vector<Triad> out;
  if (m.is_reciprocal_mode()) {
    out.reserve(n * (n - 1) * (n - 2) / 6);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = i + 1; k < n; ++k) {
        for (std::size_t j = k + 1; j < n; ++j) out.push_back({m(i, k), m(i, j), m(k, j), i, k, j});
      }
    }
  } else {
    out.reserve(n * (n - 1) * (n - 2));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (j == i || j == k) continue;
          out.push_back({m(i, k), m(i, j), m(k, j), i, k, j});
        }
      }
    }
  }
  return out;
}

double triad_ti(const Triad& t) {
  const double product = t.alpha * t.chi;
  return std::min(std::abs(1.0 - t.beta / product), std::abs(1.0 - product / t.beta));
}

double lti(const Triad& t, int order) {
  const double l = log_ratio(t);
  if (order == 1) return std::abs(l);
  if (order == 2) return l * l;
  throw InputError("LTI order must be 1 or 2");
}

double ci_rev(const PairwiseComparisonMatrix& m) {
  const double n = static_cast<double>(m.size());
  return (rev_priority(m).lambda_max - n) / (n - 1.0);
}

double ci_llsm(const PairwiseComparisonMatrix& m) {
  require_triads(m);
  const std::size_t n = m.size();
  const PriorityVector w = llsm_priority(m);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double l = std::log(m(i, j)) + std::log(w[j]) - std::log(w[i]);
      acc += l * l;
    }
  }
  const double nn = static_cast<double>(n);
  return 2.0 * acc / ((nn - 1.0) * (nn - 2.0));
}

double ci_lua(const PairwiseComparisonMatrix& m, const OptimizerSettings& opt) {
  return std::sqrt(lua_priority(m, opt).objective) / static_cast<double>(m.size());
}

double ci_srdm(const PairwiseComparisonMatrix& m, const OptimizerSettings& opt) {
  return std::sqrt(srdm_priority(m, opt).objective / static_cast<double>(m.size()));
}

double koczkodaj_k(const PairwiseComparisonMatrix& m) {
  if (!m.is_reciprocal_mode()) {
    throw InputError("K(TI) is defined for reciprocal matrices only; use A_LTI or CM_LTI2");
  }
  double best = 0.0;
  for (const Triad& t : enumerate_triads(m)) best = std::max(best, triad_ti(t));
  return best;
}

double grzybowski_a(const PairwiseComparisonMatrix& m) {
  const auto triads = enumerate_triads(m);
  double acc = 0.0;
  for (const Triad& t : triads) acc += triad_ti(t);
  return acc / static_cast<double>(triads.size());
}

double a_lti(const PairwiseComparisonMatrix& m, int order) {
  const auto triads = enumerate_triads(m);
  double acc = 0.0;
  for (const Triad& t : triads) acc += lti(t, order);
  return acc / static_cast<double>(triads.size());
}

double cm_lti2(const PairwiseComparisonMatrix& m) {
  const auto triads = enumerate_triads(m);
  double acc = 0.0;
  double top = 0.0;
  for (const Triad& t : triads) {
    const double v = lti(t, 2);
    acc += v;
    top = std::max(top, v);
  }
  return acc / static_cast<double>(triads.size()) / (1.0 + top);
}

std::string_view measure_name(Measure m) {
  switch (m) {
    case Measure::ci_rev: return "CI_REV";
    case Measure::ci_llsm: return "CI_LLSM";
    case Measure::ci_lua: return "CI_LUA";
    case Measure::ci_srdm: return "CI_SRDM";
    case Measure::k_ti: return "K_TI";
    case Measure::a_ti: return "A_TI";
    case Measure::a_lti1: return "A_LTI1";
    case Measure::a_lti2: return "A_LTI2";
    case Measure::cm_lti2: return "CM_LTI2";
  }
  return "?";
}

Measure parse_measure(std::string_view text) {
  std::string up;
  for (char c : text) {
    if (c == '(' || c == ')' || c == '-') {
      up.push_back('_');
    } else {
      up.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    }
  }
  while (!up.empty() && up.back() == '_') up.pop_back();
  for (Measure m : kAllMeasures) {
    if (measure_name(m) == up) return m;
  }
  throw InputError("unknown consistency measure '" + std::string(text) + "'");
}

bool measure_is_triad_based(Measure m) {
  return m != Measure::ci_rev && m != Measure::ci_lua && m != Measure::ci_srdm;
}

double compute_measure(Measure measure, const PairwiseComparisonMatrix& m, const OptimizerSettings& opt) {
  switch (measure) {
    case Measure::ci_rev: return ci_rev(m);
    case Measure::ci_llsm: return ci_llsm(m);
    case Measure::ci_lua: return ci_lua(m, opt);
    case Measure::ci_srdm: return ci_srdm(m, opt);
    case Measure::k_ti: return koczkodaj_k(m);
    case Measure::a_ti: return grzybowski_a(m);
    case Measure::a_lti1: return a_lti(m, 1);
    case Measure::a_lti2: return a_lti(m, 2);
    case Measure::cm_lti2: return cm_lti2(m);
  }
  throw InputError("unknown measure");
}

}  // namespace pcmlab
