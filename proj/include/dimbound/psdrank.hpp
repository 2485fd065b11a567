#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "dimbound/bounds.hpp"
#include "dimbound/correlation.hpp"

namespace dimbound {

/// Entrywise-nonnegative matrix with at least one positive entry.
class NonnegMatrix {
 public:
  /// Row-major entries. Throws ShapeMismatch, NegativeEntry, ZeroMatrix.
  NonnegMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return m_[i * cols_ + j]; }
  const std::vector<double>& entries() const noexcept { return m_; }

  NonnegMatrix transpose() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> m_;
};

/// Row x*na + a, column y*nb + b, entry p(ab|xy).
NonnegMatrix flatten(const Correlation& p);

/// Fidelity lower bound on PSD-rank. After scaling M to total mass 1,
/// [sum_{j1,j2} (sum_i sqrt(q_{i j1} q_{i j2}))^2]^{-1}, maximized over M
/// and its transpose.
ExtendedBound psd_rank_fidelity_bound(const NonnegMatrix& m);

struct BoundComparison {
  ExtendedBound flattened_psd_bound;
  ExtendedBound f1;
  ExtendedBound f2;
  DimensionBound dimension_lower_bound;
};

BoundComparison compare_bounds(const Correlation& p);

std::string to_json(const BoundComparison& c);

/// {"rows": int, "cols": int, "m": [row-major]}.
std::string to_json(const NonnegMatrix& m);
NonnegMatrix nonneg_matrix_from_json(std::string_view text);

}  // namespace dimbound
