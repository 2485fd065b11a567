#pragma once

// Closed-form lower bounds on the local Hilbert-space dimension needed to
// reproduce a correlation, built from Bhattacharyya overlaps of conditional
// outcome distributions.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>

#include "dimbound/correlation.hpp"

namespace dimbound {

/// A bracket below this is a structural zero and the bound becomes +infinity.
inline constexpr double kZeroBracket = 1e-12;
/// Slack subtracted before taking the ceiling of a real bound.
inline constexpr double kCeilingGuard = 1e-9;

/// Nonnegative real or +infinity.
class ExtendedBound {
 public:
  constexpr ExtendedBound() = default;
  constexpr explicit ExtendedBound(double v) : value_(v) {}
  static constexpr ExtendedBound infinity() {
    return ExtendedBound(std::numeric_limits<double>::infinity());
  }

  constexpr bool is_infinite() const noexcept {
    return value_ == std::numeric_limits<double>::infinity();
  }
  constexpr bool is_finite() const noexcept { return !is_infinite(); }
  /// +inf for infinite bounds.
  constexpr double value() const noexcept { return value_; }

  friend constexpr auto operator<=>(const ExtendedBound&, const ExtendedBound&) = default;

 private:
  double value_ = 0.0;
};

/// Positive integer or +infinity.
class DimensionBound {
 public:
  constexpr DimensionBound() = default;
  constexpr explicit DimensionBound(std::int64_t v) : value_(v) {}
  static constexpr DimensionBound infinity() {
    DimensionBound d;
    d.infinite_ = true;
    return d;
  }

  constexpr bool is_infinite() const noexcept { return infinite_; }
  /// Meaningless when is_infinite().
  constexpr std::int64_t value() const noexcept { return value_; }

  friend constexpr bool operator==(const DimensionBound&, const DimensionBound&) = default;

 private:
  std::int64_t value_ = 1;
  bool infinite_ = false;
};

/// ceiling(v - kCeilingGuard), floored at 1; infinity propagates.
DimensionBound guarded_ceiling(ExtendedBound v);

std::string to_string(ExtendedBound v);
std::string to_string(DimensionBound v);

/// sum_a sqrt(p(a b1|x y1)) * sqrt(p(a b2|x y2)).
double overlap(const Correlation& p, std::size_t x, std::size_t y1, std::size_t b1,
               std::size_t y2, std::size_t b2);

/// Bracket for one pair (y1, y2): sum over (b1, b2) of [min_x overlap]^2.
double bob_bracket(const Correlation& p, std::size_t y1, std::size_t y2);

/// max over (y1, y2) of 1 / bob_bracket.
ExtendedBound f1(const Correlation& p);

/// The same bound with the parties' roles exchanged; equals f1(swap_parties(p)).
ExtendedBound f2(const Correlation& p);

/// q(ba|yx) = p(ab|xy).
Correlation swap_parties(const Correlation& p);

struct BoundReport {
  ExtendedBound f1;
  ExtendedBound f2;
  DimensionBound dimension_lower_bound;
};

BoundReport dimension_lower_bound(const Correlation& p);

/// {"f1": number|"infinity", "f2": ..., "dimension_lower_bound": int|"infinity"}.
std::string to_json(const BoundReport& r);

struct BoundStats {
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
};

struct RobustnessSummary {
  double eps = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  BoundStats f1;
  BoundStats f2;
};

/// Draws `samples` tables with independent uniform offsets in [-eps, eps]
/// per entry (row-major flat order, one draw per entry), clamps at 0 and
/// rescales each (x, y) block to sum 1, then evaluates f1 and f2.
/// Deterministic for a given seed. eps == 0 evaluates p itself.
RobustnessSummary robustness_scan(const Correlation& p, double eps, std::size_t samples,
                                  std::uint64_t seed);

/// One perturbed sample, as drawn by robustness_scan; exposed for testing.
Correlation perturb(const Correlation& p, double eps, std::uint64_t seed);

std::string to_json(const RobustnessSummary& s);

}  // namespace dimbound
