#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pcmlab {

/// Admissible judgment values: Saaty {1/9..9}, geometric {2^(k/2): |k| <= 8},
/// or numeric {1/N..N}. Every variant is closed under reciprocal and holds 1.
/// `continuous` admits every positive real (rounding is the identity).
class JudgmentScale {
 public:
  enum class Kind { saaty, geometric, numeric, continuous };

  static JudgmentScale saaty();
  static JudgmentScale geometric();
  static JudgmentScale numeric(std::uint64_t max_value);
  static JudgmentScale continuous();

  /// Parses "saaty", "geometric", "numeric:N" or "continuous".
  static JudgmentScale parse(const std::string& text);

  Kind kind() const noexcept { return kind_; }
  std::uint64_t numeric_max() const noexcept { return numeric_max_; }
  std::string name() const;

  /// Sorted ascending. Materialized on every call for numeric scales; empty for continuous.
  std::vector<double> values() const;
  bool contains(double v) const;

  /// Nearest scale value by linear distance; exact ties go to the value nearer 1.
  double round(double v) const;

  friend bool operator==(const JudgmentScale&, const JudgmentScale&) = default;

 private:
  JudgmentScale(Kind kind, std::uint64_t numeric_max, std::vector<double> values)
      : kind_(kind), numeric_max_(numeric_max), values_(std::move(values)) {}

  Kind kind_;
  std::uint64_t numeric_max_ = 0;
  std::vector<double> values_;  // empty for numeric scales
};

inline double round_to_scale(double v, const JudgmentScale& scale) { return scale.round(v); }

}  // namespace pcmlab
