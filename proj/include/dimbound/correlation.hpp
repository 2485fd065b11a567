#pragma once

// Two-party correlations p(ab|xy): alphabets, a dense probability table and
// the checks every downstream computation relies on.

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dimbound/error.hpp"

namespace dimbound {

inline constexpr double kDefaultTol = 1e-9;

/// Alphabet sizes |X|, |Y|, |A|, |B|.
struct Sizes {
  std::size_t nx = 0;
  std::size_t ny = 0;
  std::size_t na = 0;
  std::size_t nb = 0;

  std::size_t table_size() const noexcept { return nx * ny * na * nb; }
  bool operator==(const Sizes&) const = default;
};

class Correlation {
 public:
  /// Checks shape, sign and per-(x,y) normalization. Entries in [-tol, 0)
  /// are clamped to 0; everything else is stored bit-exactly.
  static Correlation validate(std::vector<double> table, Sizes sizes,
                              double tol = kDefaultTol);

  const Sizes& sizes() const noexcept { return sizes_; }
  std::size_t nx() const noexcept { return sizes_.nx; }
  std::size_t ny() const noexcept { return sizes_.ny; }
  std::size_t na() const noexcept { return sizes_.na; }
  std::size_t nb() const noexcept { return sizes_.nb; }

  /// Flat layout: ((x*ny + y)*na + a)*nb + b.
  std::size_t index(std::size_t x, std::size_t y, std::size_t a,
                    std::size_t b) const noexcept {
    return ((x * sizes_.ny + y) * sizes_.na + a) * sizes_.nb + b;
  }

  /// Unchecked access.
  double operator()(std::size_t x, std::size_t y, std::size_t a,
                    std::size_t b) const noexcept {
    return table_[index(x, y, a, b)];
  }

  /// Bounds-checked access; throws IndexOutOfRange.
  double probability(std::size_t x, std::size_t y, std::size_t a,
                     std::size_t b) const;

  std::span<const double> table() const noexcept { return table_; }

  bool operator==(const Correlation&) const = default;

 private:
  Correlation(std::vector<double> table, Sizes sizes)
      : sizes_(sizes), table_(std::move(table)) {}

  Sizes sizes_;
  std::vector<double> table_;
};

/// Bob's outcome distribution for settings (x, y).
std::vector<double> marginal_b(const Correlation& p, std::size_t x, std::size_t y);
/// Alice's outcome distribution for settings (x, y).
std::vector<double> marginal_a(const Correlation& p, std::size_t x, std::size_t y);

struct SignalingReport {
  bool is_nonsignaling = true;
  double max_violation = 0.0;
};

/// Compares Bob's marginals across x and Alice's across y.
SignalingReport check_nonsignaling(const Correlation& p, double tol = kDefaultTol);

/// {"sizes": {"x","y","a","b"}, "p": [...]} with 17 significant digits.
std::string to_json(const Correlation& p);
/// Throws ParseError on malformed text, then any validate() error.
Correlation from_json(std::string_view text, double tol = kDefaultTol);

}  // namespace dimbound
