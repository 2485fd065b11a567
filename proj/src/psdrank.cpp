#include "dimbound/psdrank.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"

namespace dimbound {

NonnegMatrix::NonnegMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), m_(std::move(entries)) {
  if (rows_ == 0 || cols_ == 0 || m_.size() != rows_ * cols_) {
    throw Error(ErrorKind::ShapeMismatch, "matrix entries do not match rows*cols");
  }
  bool any_positive = false;
  for (double v : m_) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw Error(ErrorKind::NegativeEntry, "matrix entries must be finite and nonnegative");
    any_positive = any_positive || v > 0.0;
  }
  if (!any_positive) throw Error(ErrorKind::ZeroMatrix, "matrix has no positive entry");
}

NonnegMatrix NonnegMatrix::transpose() const {
  std::vector<double> t(m_.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t[j * rows_ + i] = m_[i * cols_ + j];
  return NonnegMatrix(cols_, rows_, std::move(t));
}

NonnegMatrix flatten(const Correlation& p) {
  const std::size_t rows = p.nx() * p.na();
  const std::size_t cols = p.ny() * p.nb();
  std::vector<double> m(rows * cols);
  for (std::size_t x = 0; x < p.nx(); ++x)
    for (std::size_t y = 0; y < p.ny(); ++y)
      for (std::size_t a = 0; a < p.na(); ++a)
        for (std::size_t b = 0; b < p.nb(); ++b) m[(x * p.na() + a) * cols + y * p.nb() + b] = p(x, y, a, b);
  return NonnegMatrix(rows, cols, std::move(m));
}

namespace {

// Columns play the role of Bob's outcomes and rows of Alice's, with a
// single setting on each side.
double column_bracket(const NonnegMatrix& m) {
  double total = 0.0;
  for (double v : m.entries()) total += v;
  std::vector<double> root(m.entries().size());
  std::transform(m.entries().begin(), m.entries().end(), root.begin(),
                 [total](double v) { return std::sqrt(v / total); });

  const std::size_t n = m.rows(), k = m.cols();
  double bracket = 0.0;
  for (std::size_t j1 = 0; j1 < k; ++j1)
    for (std::size_t j2 = 0; j2 < k; ++j2) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += root[i * k + j1] * root[i * k + j2];
      bracket += s * s;
    }
  return bracket;
}

ExtendedBound from_bracket(double bracket) {
  return bracket < kZeroBracket ? ExtendedBound::infinity() : ExtendedBound(1.0 / bracket);
}

nlohmann::json bound_json(ExtendedBound v) {
  return v.is_infinite() ? nlohmann::json("infinity") : nlohmann::json(v.value());
}

}  // namespace

ExtendedBound psd_rank_fidelity_bound(const NonnegMatrix& m) {
  return std::max(from_bracket(column_bracket(m)), from_bracket(column_bracket(m.transpose())));
}

BoundComparison compare_bounds(const Correlation& p) {
  const BoundReport r = dimension_lower_bound(p);
  return {psd_rank_fidelity_bound(flatten(p)), r.f1, r.f2, r.dimension_lower_bound};
}

std::string to_json(const BoundComparison& c) {
  nlohmann::json j;
  j["flattened_psd_bound"] = bound_json(c.flattened_psd_bound);
  j["flattened_psd_rank_lower_bound"] =
      c.flattened_psd_bound.is_infinite() ? nlohmann::json("infinity")
                                          : nlohmann::json(guarded_ceiling(c.flattened_psd_bound).value());
  j["f1"] = bound_json(c.f1);
  j["f2"] = bound_json(c.f2);
  j["dimension_lower_bound"] = c.dimension_lower_bound.is_infinite()
                                   ? nlohmann::json("infinity")
                                   : nlohmann::json(c.dimension_lower_bound.value());
  return j.dump();
}

std::string to_json(const NonnegMatrix& m) {
  nlohmann::json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  j["m"] = m.entries();
  return j.dump();
}

NonnegMatrix nonneg_matrix_from_json(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    return NonnegMatrix(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>(),
                        j.at("m").get<std::vector<double>>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

}  // namespace dimbound
