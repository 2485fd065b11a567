#pragma once

// Canonical correlations and combinators.

#include <cstddef>
#include <span>
#include <vector>

#include "dimbound/correlation.hpp"

namespace dimbound {

/// 2x2x2x2; (2+sqrt2)/8 when a xor b == x*y, (2-sqrt2)/8 otherwise.
Correlation chsh_optimal();

/// Settings {0,1,2}, outcomes all eight 3-bit strings. Bit i of string s is
/// (s >> (2 - i)) & 1, so index 4 is the string "100". Value 1/8 when
/// a_y == b_x, a has even parity and b has odd parity.
Correlation magic_square();

/// 2x2xdxd; 1/d when x*y == (b - a) mod d. Throws BadDimension for d < 2.
Correlation pr_box(std::size_t d);

/// Zero wherever x|a == y|b for (x,y) != (1,1), uniform on the remaining
/// outcome pairs, uniform 1/4 at (1,1). Signaling.
Correlation ffl_uniform();

/// Uniform over all outcome pairs.
Correlation uniform(Sizes sizes);

/// p(ab|xy) = [a == fa[x]][b == fb[y]].
Correlation deterministic(std::span<const std::size_t> fa, std::span<const std::size_t> fb,
                          std::size_t na, std::size_t nb);

/// Entrywise convex combination. ShapeMismatch, BadWeights.
Correlation mixture(std::span<const Correlation> ps, std::span<const double> weights);

/// (1/3)(p1 + p2 + p3) with p1: a=b=1, p2: a=b=0, p3: a=1-x, b=1-y.
Correlation nonconvex_mixture();

/// Product correlation over Cartesian-product alphabets. Each combined label
/// is packed mixed-radix big-endian: the first factor is the most
/// significant digit.
Correlation product(std::span<const Correlation> ps);

}  // namespace dimbound
