#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "pcmlab/priority_vector.hpp"

namespace pcmlab {

enum class Reciprocity { reciprocal, arbitrary };

/// Square positive matrix of pairwise judgments with unit diagonal.
///
/// In reciprocal mode the constructor checks a_ji = 1/a_ij to a relative
/// tolerance of kReciprocityTolerance. Storage is row-major.
class PairwiseComparisonMatrix {
 public:
  static constexpr double kReciprocityTolerance = 1e-12;

  PairwiseComparisonMatrix(std::size_t n, std::vector<double> entries, Reciprocity mode);

  /// Builds from nested rows; when `mode` is empty it is inferred.
  static PairwiseComparisonMatrix from_rows(const std::vector<std::vector<double>>& rows,
                                            std::optional<Reciprocity> mode = std::nullopt);

  /// n x n all-ones matrix.
  static PairwiseComparisonMatrix ones(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  Reciprocity mode() const noexcept { return mode_; }
  bool is_reciprocal_mode() const noexcept { return mode_ == Reciprocity::reciprocal; }

  double operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(entries_).subspan(i * n_, n_);
  }
  std::span<const double> data() const noexcept { return entries_; }

  /// y = M x.
  std::vector<double> multiply(std::span<const double> x) const;

  /// Same entries, different mode tag (reciprocal mode is validated).
  PairwiseComparisonMatrix with_mode(Reciprocity mode) const;

  friend bool operator==(const PairwiseComparisonMatrix&, const PairwiseComparisonMatrix&) = default;

 private:
  std::size_t n_;
  std::vector<double> entries_;
  Reciprocity mode_;
};

/// True when a_ij * a_ji == 1 within relative `tol` for every pair.
bool has_reciprocal_entries(std::size_t n, std::span<const double> entries,
                            double tol = PairwiseComparisonMatrix::kReciprocityTolerance);

/// Consistent matrix of ratios w_i / w_j.
PairwiseComparisonMatrix pcm_from_weights(const PriorityVector& w);

/// Keeps the upper triangle and rewrites the lower one as its reciprocal mirror.
PairwiseComparisonMatrix enforce_reciprocity(const PairwiseComparisonMatrix& m);

/// Reciprocal and a_ik a_kj = a_ij (relative `tol`) for all i, j, k.
bool is_consistent(const PairwiseComparisonMatrix& m, double tol = 1e-9);

/// Column order (and row order) agrees across all rows (columns).
bool is_ordinally_transitive(const PairwiseComparisonMatrix& m);

}  // namespace pcmlab
