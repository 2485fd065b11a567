#include "dimbound/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "json.hpp"

namespace dimbound {

DimensionBound guarded_ceiling(ExtendedBound v) {
  if (v.is_infinite()) return DimensionBound::infinity();
  const double c = std::ceil(v.value() - kCeilingGuard);
  return DimensionBound(std::max<std::int64_t>(1, static_cast<std::int64_t>(c)));
}

std::string to_string(ExtendedBound v) {
  if (v.is_infinite()) return "infinity";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v.value());
  return buf;
}

std::string to_string(DimensionBound v) {
  return v.is_infinite() ? std::string("infinity") : std::to_string(v.value());
}

double overlap(const Correlation& p, std::size_t x, std::size_t y1, std::size_t b1,
               std::size_t y2, std::size_t b2) {
  if (x >= p.nx() || y1 >= p.ny() || y2 >= p.ny() || b1 >= p.nb() || b2 >= p.nb()) {
    throw Error(ErrorKind::IndexOutOfRange, "overlap indices");
  }
  double s = 0.0;
  for (std::size_t a = 0; a < p.na(); ++a) {
    s += std::sqrt(p(x, y1, a, b1)) * std::sqrt(p(x, y2, a, b2));
  }
  return s;
}

double bob_bracket(const Correlation& p, std::size_t y1, std::size_t y2) {
  double bracket = 0.0;
  for (std::size_t b1 = 0; b1 < p.nb(); ++b1) {
    for (std::size_t b2 = 0; b2 < p.nb(); ++b2) {
      double m = overlap(p, 0, y1, b1, y2, b2);
      for (std::size_t x = 1; x < p.nx() && m > 0.0; ++x) {
        m = std::min(m, overlap(p, x, y1, b1, y2, b2));
      }
      bracket += m * m;
    }
  }
  return bracket;
}

ExtendedBound f1(const Correlation& p) {
  double best = 0.0;
  for (std::size_t y1 = 0; y1 < p.ny(); ++y1) {
    for (std::size_t y2 = 0; y2 < p.ny(); ++y2) {
      const double bracket = bob_bracket(p, y1, y2);
      if (bracket < kZeroBracket) return ExtendedBound::infinity();
      best = std::max(best, 1.0 / bracket);
    }
  }
  return ExtendedBound(best);
}

Correlation swap_parties(const Correlation& p) {
  const Sizes s = p.sizes();
  const Sizes t{s.ny, s.nx, s.nb, s.na};
  std::vector<double> table(s.table_size());
  for (std::size_t x = 0; x < s.nx; ++x)
    for (std::size_t y = 0; y < s.ny; ++y)
      for (std::size_t a = 0; a < s.na; ++a)
        for (std::size_t b = 0; b < s.nb; ++b)
          table[((y * t.ny + x) * t.na + b) * t.nb + a] = p(x, y, a, b);
  return Correlation::validate(std::move(table), t);
}

ExtendedBound f2(const Correlation& p) { return f1(swap_parties(p)); }

BoundReport dimension_lower_bound(const Correlation& p) {
  BoundReport r{f1(p), f2(p), {}};
  r.dimension_lower_bound = guarded_ceiling(std::max(r.f1, r.f2));
  return r;
}

namespace {

nlohmann::json bound_json(ExtendedBound v) {
  if (v.is_infinite()) return "infinity";
  return v.value();
}

nlohmann::json bound_json(DimensionBound v) {
  if (v.is_infinite()) return "infinity";
  return v.value();
}

Correlation perturb_with(const Correlation& p, double eps, std::mt19937_64& rng) {
  const Sizes s = p.sizes();
  std::uniform_real_distribution<double> offset(-eps, eps);
  std::vector<double> table(p.table().begin(), p.table().end());
  for (double& v : table) v = std::max(0.0, v + offset(rng));

  const std::size_t block = s.na * s.nb;
  for (std::size_t start = 0; start < table.size(); start += block) {
    double sum = 0.0;
    for (std::size_t i = start; i < start + block; ++i) sum += table[i];
    if (!(sum > 0.0)) {
      throw Error(ErrorKind::InfeasiblePerturbation,
                  "every entry of a settings block was clamped to zero");
    }
    for (std::size_t i = start; i < start + block; ++i) table[i] /= sum;
  }
  return Correlation::validate(std::move(table), s);
}

void check_eps(double eps) {
  if (!(eps >= 0.0) || !std::isfinite(eps)) {
    throw Error(ErrorKind::InvalidArgument, "eps must be a finite nonnegative number");
  }
}

}  // namespace

std::string to_json(const BoundReport& r) {
  nlohmann::json j;
  j["f1"] = bound_json(r.f1);
  j["f2"] = bound_json(r.f2);
  j["dimension_lower_bound"] = bound_json(r.dimension_lower_bound);
  return j.dump();
}

Correlation perturb(const Correlation& p, double eps, std::uint64_t seed) {
  check_eps(eps);
  if (eps == 0.0) return p;
  std::mt19937_64 rng(seed);
  return perturb_with(p, eps, rng);
}

RobustnessSummary robustness_scan(const Correlation& p, double eps, std::size_t samples,
                                  std::uint64_t seed) {
  check_eps(eps);
  if (samples == 0) throw Error(ErrorKind::InvalidArgument, "samples must be positive");

  RobustnessSummary out{eps, samples, seed, {}, {}};
  std::mt19937_64 rng(seed);
  double sum1 = 0.0, sum2 = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const Correlation q = eps == 0.0 ? p : perturb_with(p, eps, rng);
    const double v1 = f1(q).value();
    const double v2 = f2(q).value();
    if (i == 0) {
      out.f1 = {v1, v1, 0.0};
      out.f2 = {v2, v2, 0.0};
    }
    out.f1.min = std::min(out.f1.min, v1);
    out.f1.max = std::max(out.f1.max, v1);
    out.f2.min = std::min(out.f2.min, v2);
    out.f2.max = std::max(out.f2.max, v2);
    sum1 += v1;
    sum2 += v2;
  }
  out.f1.mean = sum1 / static_cast<double>(samples);
  out.f2.mean = sum2 / static_cast<double>(samples);
  return out;
}

std::string to_json(const RobustnessSummary& s) {
  auto stats = [](const BoundStats& b) {
    return nlohmann::json{{"min", bound_json(ExtendedBound(b.min))},
                          {"max", bound_json(ExtendedBound(b.max))},
                          {"mean", bound_json(ExtendedBound(b.mean))}};
  };
  nlohmann::json j;
  j["eps"] = s.eps;
  j["samples"] = s.samples;
  j["seed"] = s.seed;
  j["f1"] = stats(s.f1);
  j["f2"] = stats(s.f2);
  return j.dump();
}

}  // namespace dimbound
