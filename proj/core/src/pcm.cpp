#include "pcmlab/pcm.hpp"

#include <cmath>
#include <string>

#include "pcmlab/error.hpp"

namespace pcmlab {

bool has_reciprocal_entries(std::size_t n, std::span<const double> a, double tol) {
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(a[i * n + j] * a[j * n + i] - 1.0) > tol) return false;
    }
  }
  return true;
}

PairwiseComparisonMatrix::PairwiseComparisonMatrix(std::size_t n, std::vector<double> entries,
                                                   Reciprocity mode)
    : n_(n), entries_(std::move(entries)), mode_(mode) {
  if (n_ < 2) throw InputError("matrix dimension must be >= 2, got " + std::to_string(n_));
  if (entries_.size() != n_ * n_) {
    throw InputError("matrix needs " + std::to_string(n_ * n_) + " entries, got " +
                     std::to_string(entries_.size()));
  }
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      const double v = entries_[i * n_ + j];
      if (!std::isfinite(v) || !(v > 0.0)) {
        throw InputError("entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                         ") must be finite and > 0");
      }
    }
    if (entries_[i * n_ + i] != 1.0) {
      throw InputError("diagonal entry " + std::to_string(i + 1) + " must equal 1");
    }
  }
  if (mode_ == Reciprocity::reciprocal && !has_reciprocal_entries(n_, entries_)) {
    throw InputError("matrix is not reciprocal (a_ji != 1/a_ij)");
  }
}

PairwiseComparisonMatrix PairwiseComparisonMatrix::from_rows(
    const std::vector<std::vector<double>>& rows, std::optional<Reciprocity> mode) {
  const std::size_t n = rows.size();
  std::vector<double> entries;
  entries.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      throw InputError("row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) +
                       " entries, expected " + std::to_string(n));
    }
    entries.insert(entries.end(), rows[i].begin(), rows[i].end());
  }
  Reciprocity m = mode.value_or(
      n >= 2 && entries.size() == n * n && has_reciprocal_entries(n, entries)
          ? Reciprocity::reciprocal
          : Reciprocity::arbitrary);
  return PairwiseComparisonMatrix(n, std::move(entries), m);
}

PairwiseComparisonMatrix PairwiseComparisonMatrix::ones(std::size_t n) {
  return PairwiseComparisonMatrix(n, std::vector<double>(n * n, 1.0), Reciprocity::reciprocal);
}

std::vector<double> PairwiseComparisonMatrix::multiply(std::span<const double> x) const {
  if (x.size() != n_) throw InputError("vector length mismatch in matrix product");
  std::vector<double> y(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n_; ++j) acc += entries_[i * n_ + j] * x[j];
    y[i] = acc;
  }
  return y;
}

PairwiseComparisonMatrix PairwiseComparisonMatrix::with_mode(Reciprocity mode) const {
  return PairwiseComparisonMatrix(n_, entries_, mode);
}

PairwiseComparisonMatrix pcm_from_weights(const PriorityVector& w) {
  const std::size_t n = w.size();
  std::vector<double> a(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = i == j ? 1.0 : w[i] / w[j];
  }
  return PairwiseComparisonMatrix(n, std::move(a), Reciprocity::reciprocal);
}

PairwiseComparisonMatrix enforce_reciprocity(const PairwiseComparisonMatrix& m) {
  const std::size_t n = m.size();
  std::vector<double> a(m.data().begin(), m.data().end());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) a[j * n + i] = 1.0 / a[i * n + j];
  }
  return PairwiseComparisonMatrix(n, std::move(a), Reciprocity::reciprocal);
}

bool is_consistent(const PairwiseComparisonMatrix& m, double tol) {
  const std::size_t n = m.size();
  if (!has_reciprocal_entries(n, m.data(), std::max(tol, PairwiseComparisonMatrix::kReciprocityTolerance))) {
    return false;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t j = 0; j < n; ++j) {
        if (std::abs(m(i, k) * m(k, j) - m(i, j)) > tol * m(i, j)) return false;
      }
    }
  }
  return true;
}

bool is_ordinally_transitive(const PairwiseComparisonMatrix& m) {
  const std::size_t n = m.size();
  // (A): if a_ij >= a_ik holds in one row it must hold in every row.
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      if (j == k) continue;
      bool any = false;
      bool all = true;
      for (std::size_t i = 0; i < n; ++i) {
        const bool ge = m(i, j) >= m(i, k);
        any = any || ge;
        all = all && ge;
      }
      if (any && !all) return false;
    }
  }
  // (B): the same for rows j, k across every column.
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      if (j == k) continue;
      bool any = false;
      bool all = true;
      for (std::size_t i = 0; i < n; ++i) {
        const bool ge = m(j, i) >= m(k, i);
        any = any || ge;
        all = all && ge;
      }
      if (any && !all) return false;
    }
  }
  return true;
}

}  // namespace pcmlab
