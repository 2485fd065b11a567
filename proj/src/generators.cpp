#include "dimbound/generators.hpp"

#include <bit>
#include <cmath>

namespace dimbound {

namespace {

template <typename Fn>
Correlation tabulate(Sizes s, Fn&& fn) {
  std::vector<double> table(s.table_size());
  std::size_t i = 0;
  for (std::size_t x = 0; x < s.nx; ++x)
    for (std::size_t y = 0; y < s.ny; ++y)
      for (std::size_t a = 0; a < s.na; ++a)
        for (std::size_t b = 0; b < s.nb; ++b) table[i++] = fn(x, y, a, b);
  return Correlation::validate(std::move(table), s);
}

}  // namespace

Correlation chsh_optimal() {
  const double agree = (2.0 + std::sqrt(2.0)) / 8.0;
  const double disagree = (2.0 - std::sqrt(2.0)) / 8.0;
  return tabulate({2, 2, 2, 2}, [&](auto x, auto y, auto a, auto b) {
    return (a ^ b) == (x & y) ? agree : disagree;
  });
}

Correlation magic_square() {
  auto bit = [](std::size_t s, std::size_t i) { return (s >> (2 - i)) & 1u; };
  return tabulate({3, 3, 8, 8}, [&](auto x, auto y, auto a, auto b) {
    const bool even_a = std::popcount(a) % 2 == 0;
    const bool odd_b = std::popcount(b) % 2 == 1;
    return even_a && odd_b && bit(a, y) == bit(b, x) ? 0.125 : 0.0;
  });
}

Correlation pr_box(std::size_t d) {
  if (d < 2) throw Error(ErrorKind::BadDimension, "pr_box needs d >= 2, got " + std::to_string(d));
  const double mass = 1.0 / static_cast<double>(d);
  return tabulate({2, 2, d, d}, [&](auto x, auto y, auto a, auto b) {
    return (x * y) % d == (b + d - a) % d ? mass : 0.0;
  });
}

Correlation ffl_uniform() {
  return tabulate({2, 2, 2, 2}, [](auto x, auto y, auto a, auto b) {
    if (x == 1 && y == 1) return 0.25;
    return (x | a) == (y | b) ? 0.0 : 0.5;
  });
}

Correlation uniform(Sizes sizes) {
  const double mass = 1.0 / static_cast<double>(sizes.na * sizes.nb);
  return tabulate(sizes, [&](auto, auto, auto, auto) { return mass; });
}

Correlation deterministic(std::span<const std::size_t> fa, std::span<const std::size_t> fb,
                          std::size_t na, std::size_t nb) {
  for (auto a : fa)
    if (a >= na) throw Error(ErrorKind::IndexOutOfRange, "fa value outside A");
  for (auto b : fb)
    if (b >= nb) throw Error(ErrorKind::IndexOutOfRange, "fb value outside B");
  return tabulate({fa.size(), fb.size(), na, nb}, [&](auto x, auto y, auto a, auto b) {
    return a == fa[x] && b == fb[y] ? 1.0 : 0.0;
  });
}

Correlation mixture(std::span<const Correlation> ps, std::span<const double> weights) {
  if (ps.empty() || ps.size() != weights.size()) {
    throw Error(ErrorKind::BadWeights, "need one weight per correlation");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw Error(ErrorKind::BadWeights, "negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > kDefaultTol) throw Error(ErrorKind::BadWeights, "weights do not sum to 1");

  const Sizes s = ps.front().sizes();
  std::vector<double> table(s.table_size(), 0.0);
  for (std::size_t k = 0; k < ps.size(); ++k) {
    if (ps[k].sizes() != s) throw Error(ErrorKind::ShapeMismatch, "mixture components differ in shape");
    const auto src = ps[k].table();
    for (std::size_t i = 0; i < table.size(); ++i) table[i] += weights[k] * src[i];
  }
  return Correlation::validate(std::move(table), s);
}

Correlation nonconvex_mixture() {
  const std::size_t ones[] = {1, 1};
  const std::size_t zeros[] = {0, 0};
  const std::size_t flip[] = {1, 0};
  const Correlation trio[] = {deterministic(ones, ones, 2, 2), deterministic(zeros, zeros, 2, 2),
                              deterministic(flip, flip, 2, 2)};
  const double third = 1.0 / 3.0;
  const double w[] = {third, third, third};
  return mixture(trio, w);
}

Correlation product(std::span<const Correlation> ps) {
  if (ps.empty()) throw Error(ErrorKind::InvalidArgument, "product of an empty list");
  Correlation acc = ps.front();
  for (std::size_t k = 1; k < ps.size(); ++k) {
    const Correlation& q = ps[k];
    const Sizes s = acc.sizes();
    const Sizes t = q.sizes();
    const Sizes r{s.nx * t.nx, s.ny * t.ny, s.na * t.na, s.nb * t.nb};
    std::vector<double> table(r.table_size());
    for (std::size_t x1 = 0; x1 < s.nx; ++x1)
      for (std::size_t x2 = 0; x2 < t.nx; ++x2)
        for (std::size_t y1 = 0; y1 < s.ny; ++y1)
          for (std::size_t y2 = 0; y2 < t.ny; ++y2)
            for (std::size_t a1 = 0; a1 < s.na; ++a1)
              for (std::size_t a2 = 0; a2 < t.na; ++a2)
                for (std::size_t b1 = 0; b1 < s.nb; ++b1)
                  for (std::size_t b2 = 0; b2 < t.nb; ++b2) {
                    const std::size_t x = x1 * t.nx + x2, y = y1 * t.ny + y2;
                    const std::size_t a = a1 * t.na + a2, b = b1 * t.nb + b2;
                    table[((x * r.ny + y) * r.na + a) * r.nb + b] =
                        acc(x1, y1, a1, b1) * q(x2, y2, a2, b2);
                  }
    acc = Correlation::validate(std::move(table), r);
  }
  return acc;
}

}  // namespace dimbound
