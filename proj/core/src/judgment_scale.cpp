#include "pcmlab/judgment_scale.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pcmlab/error.hpp"

namespace pcmlab {

namespace {

// Picks between two neighbours of v; ties go to the one closer to 1.
double closer(double v, double lo, double hi) {
  const double dlo = std::abs(v - lo);
  const double dhi = std::abs(hi - v);
  if (dlo < dhi) return lo;
  if (dhi < dlo) return hi;
  return std::abs(lo - 1.0) <= std::abs(hi - 1.0) ? lo : hi;
}

double round_sorted(double v, const std::vector<double>& values) {
  auto it = std::lower_bound(values.begin(), values.end(), v);
  if (it == values.begin()) return values.front();
  if (it == values.end()) return values.back();
  return closer(v, *(it - 1), *it);
}

}  // namespace

JudgmentScale JudgmentScale::saaty() {
  std::vector<double> v;
  for (int k = 9; k >= 2; --k) v.push_back(1.0 / k);
  for (int k = 1; k <= 9; ++k) v.push_back(k);
  return JudgmentScale(Kind::saaty, 0, std::move(v));
}

JudgmentScale JudgmentScale::geometric() {
  std::vector<double> v;
  for (int k = -8; k <= 8; ++k) v.push_back(std::exp2(k / 2.0));
  return JudgmentScale(Kind::geometric, 0, std::move(v));
}

JudgmentScale JudgmentScale::numeric(std::uint64_t max_value) {
  if (max_value < 1) throw InputError("numeric scale needs N >= 1");
  return JudgmentScale(Kind::numeric, max_value, {});
}

JudgmentScale JudgmentScale::continuous() { return JudgmentScale(Kind::continuous, 0, {}); }

JudgmentScale JudgmentScale::parse(const std::string& text) {
  if (text == "saaty") return saaty();
  if (text == "continuous") return continuous();
  if (text == "geometric") return geometric();
  const std::string prefix = "numeric:";
  if (text.rfind(prefix, 0) == 0) {
    const std::string digits = text.substr(prefix.size());
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit)) {
      throw InputError("bad numeric scale '" + text + "'");
    }
    return numeric(std::stoull(digits));
  }
  throw InputError("unknown scale '" + text + "' (expected saaty, geometric, numeric:N or continuous)");
}

std::string JudgmentScale::name() const {
  switch (kind_) {
    case Kind::saaty: return "saaty";
    case Kind::geometric: return "geometric";
    case Kind::numeric: return "numeric:" + std::to_string(numeric_max_);
    case Kind::continuous: return "continuous";
  }
  return {};
}

std::vector<double> JudgmentScale::values() const {
  if (kind_ != Kind::numeric) return values_;  // empty for continuous
  std::vector<double> v;
  v.reserve(2 * numeric_max_ - 1);
  for (std::uint64_t k = numeric_max_; k >= 2; --k) v.push_back(1.0 / static_cast<double>(k));
  for (std::uint64_t k = 1; k <= numeric_max_; ++k) v.push_back(static_cast<double>(k));
  return v;
}

bool JudgmentScale::contains(double v) const {
  if (kind_ == Kind::continuous) return v > 0.0 && std::isfinite(v);
  if (kind_ != Kind::numeric) {
    const auto it = std::lower_bound(values_.begin(), values_.end(), v * (1.0 - 1e-12));
    return it != values_.end() && std::abs(*it - v) <= 1e-12 * v;
  }
  const double big = static_cast<double>(numeric_max_);
  if (v >= 1.0) return v <= big && v == std::floor(v);
  const double inv = std::round(1.0 / v);
  return inv >= 2.0 && inv <= big && std::abs(1.0 / inv - v) <= 1e-12 * v;
}

double JudgmentScale::round(double v) const {
  if (!(v > 0.0)) throw InputError("only positive values can be rounded to a scale");
  if (kind_ == Kind::continuous) return v;
  if (kind_ != Kind::numeric) return round_sorted(v, values_);

  const double big = static_cast<double>(numeric_max_);
  if (v >= 1.0) {
    if (v >= big) return big;
    return closer(v, std::floor(v), std::min(big, std::floor(v) + 1.0));
  }
  // v in (0, 1): neighbours are 1/ceil(1/v) below and 1/floor(1/v) above.
  const double inv = 1.0 / v;
  const double lo_den = std::min(big, std::ceil(inv));
  const double hi_den = std::min(big, std::floor(inv));
  const double lo = 1.0 / lo_den;
  const double hi = hi_den <= 1.0 ? 1.0 : 1.0 / hi_den;
  if (v <= lo) return lo;
  return closer(v, lo, hi);
}

}  // namespace pcmlab
