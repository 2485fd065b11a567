// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Tolerances are fixed here and never tuned at run time.
//
// --expect-fail N keeps criterion N's FAIL line but leaves it out of the exit
// status; an expected failure that starts passing counts as a failure.

#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dimbound/bounds.hpp"
#include "dimbound/generators.hpp"
#include "dimbound/psdrank.hpp"
#include "dimbound/quantum.hpp"

using namespace dimbound;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

Sizes sizes_from(std::uint64_t seed, std::size_t lo, std::size_t span) {
  return {lo + seed % span, lo + (seed / span) % span, lo + (seed / (span * span)) % span,
          lo + (seed / (span * span * span)) % span};
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

Outcome exact_bound(const Correlation& p, double expected, double tol, std::int64_t expected_dim) {
  const BoundReport r = dimension_lower_bound(p);
  const bool ok = r.f1.is_finite() && std::abs(r.f1.value() - expected) <= tol && !r.dimension_lower_bound.is_infinite() &&
                  r.dimension_lower_bound.value() == expected_dim;
  return {ok, "f1=" + to_string(r.f1) + " dim=" + to_string(r.dimension_lower_bound)};
}

Outcome criterion_1() { return exact_bound(chsh_optimal(), 2.0, 1e-9, 2); }
Outcome criterion_2() { return exact_bound(magic_square(), 4.0, 1e-9, 4); }
Outcome criterion_3() { return exact_bound(nonconvex_mixture(), 2.25, 1e-9, 3); }

Outcome criterion_4() {
  std::string detail;
  bool ok = true;
  for (std::size_t d = 2; d <= 5; ++d) {
    const ExtendedBound v = f1(pr_box(d));
    ok = ok && v.is_infinite();
    detail += "d=" + std::to_string(d) + ":" + to_string(v) + " ";
  }
  return {ok, detail};
}

Outcome criterion_5() {
  const ExtendedBound v = f1(ffl_uniform());
  return {v.is_infinite(), "f1=" + to_string(v)};
}

Outcome criterion_6() {
  const Correlation pair[] = {chsh_optimal(), magic_square()};
  const ExtendedBound prod = f1(product(pair));
  bool ok = prod.is_finite() && std::abs(prod.value() - 8.0) <= 1e-8;

  double worst = 0.0;
  int finite_pairs = 0;
  for (std::uint64_t k = 0; k < 100; ++k) {
    const std::uint64_t s1 = 6000 + 2 * k, s2 = 6001 + 2 * k;
    const Correlation p = induced_correlation(random_operator_representation(1 + s1 % 3, sizes_from(s1 / 3, 1, 3), s1));
    const Correlation q = induced_correlation(random_operator_representation(1 + s2 % 3, sizes_from(s2 / 3, 1, 3), s2));
    const Correlation pq[] = {p, q};
    const ExtendedBound fp = f1(p), fq = f1(q), fpq = f1(product(pq));
    if (fp.is_infinite() || fq.is_infinite()) continue;
    ++finite_pairs;
    const double expected = fp.value() * fq.value();
    const double rel = std::abs(fpq.value() - expected) / expected;
    worst = std::max(worst, rel);
    ok = ok && fpq.is_finite() && rel <= 1e-8;
  }
  return {ok, "f1(chsh x ms)=" + to_string(prod) + " worst rel err=" + fmt(worst) + " over " +
                  std::to_string(finite_pairs) + " finite pairs"};
}

// Shared by criteria 7 and 8.
std::vector<OperatorRepresentation> soundness_sample() {
  std::vector<OperatorRepresentation> reps;
  for (std::uint64_t k = 0; k < 500; ++k) {
    const std::uint64_t seed = 70000 + k;
    reps.push_back(random_operator_representation(1 + k % 4, sizes_from(seed, 2, 2), seed));
  }
  return reps;
}

Outcome criterion_7(const std::vector<OperatorRepresentation>& reps) {
  int violations = 0;
  for (const auto& orep : reps) {
    const DimensionBound b = dimension_lower_bound(induced_correlation(orep)).dimension_lower_bound;
    if (b.is_infinite() || b.value() > static_cast<std::int64_t>(orep.dim)) ++violations;
  }
  return {violations == 0, std::to_string(violations) + " of " + std::to_string(reps.size()) + " exceed d"};
}

Outcome criterion_8(const std::vector<OperatorRepresentation>& reps) {
  int failures = 0;
  double eq7 = -1.0, eq8 = -1.0, eq10 = -1.0, rho = 0.0;
  for (const auto& orep : reps) {
    const AuditReport r = audit_derivation(orep, 1e-8);
    eq7 = std::max(eq7, r.fidelity_monotonicity_violation);
    eq8 = std::max(eq8, r.trace_fidelity_violation);
    eq10 = std::max(eq10, r.purity_floor_violation);
    rho = std::max(rho, r.rho_y_max_discrepancy);
    const bool ok = r.chain_holds && r.fidelity_monotonicity_violation <= 1e-8 && r.trace_fidelity_violation <= 1e-8 &&
                    r.purity_floor_violation <= 1e-8 && r.rho_y_max_discrepancy <= 1e-9;
    if (!ok) ++failures;
  }
  return {failures == 0, std::to_string(failures) + " failing; max violations monotonicity=" + fmt(eq7) +
                             " trace=" + fmt(eq8) + " purity=" + fmt(eq10) + " rho_y=" + fmt(rho)};
}

Outcome criterion_9() {
  std::mt19937_64 rng(900);
  double sym = 0.0, trace_gap = -1.0, mono_gap = -1.0, self = 0.0;
  for (int k = 0; k < 200; ++k) {
    const std::size_t dim = 2 + static_cast<std::size_t>(k % 5);
    const QuantumState rho = k % 4 == 0 ? random_pure_state(dim, rng) : random_state(dim, rng);
    const QuantumState sigma = random_state(dim, rng);
    const double f = fidelity(rho, sigma);
    sym = std::max(sym, std::abs(f - fidelity(sigma, rho)));
    trace_gap = std::max(trace_gap, trace_product(rho.matrix(), sigma.matrix()) - f * f);
    double measured = 0.0;
    for (const auto& e : random_povm(dim, 2 + static_cast<std::size_t>(k % 3), rng)) {
      measured += std::sqrt(std::max(0.0, trace_product(e, rho.matrix()))) *
                  std::sqrt(std::max(0.0, trace_product(e, sigma.matrix())));
    }
    mono_gap = std::max(mono_gap, f - measured);
    self = std::max(self, std::abs(fidelity(rho, rho) - 1.0));
  }
  ComplexMatrix zero = ComplexMatrix::Zero(2, 2);
  zero(0, 0) = 1.0;
  const double pure_vs_mixed =
      fidelity(QuantumState(HermitianMatrix(zero)), QuantumState(HermitianMatrix::identity(2) * 0.5));
  const bool ok = sym <= 1e-9 && trace_gap <= 1e-9 && mono_gap <= 1e-9 && self <= 1e-10 &&
                  std::abs(pure_vs_mixed - 0.7071068) <= 1e-6;
  return {ok, "symmetry=" + fmt(sym) + " trace-F^2=" + fmt(trace_gap) + " F-measured=" + fmt(mono_gap) +
                  " |F(rho,rho)-1|=" + fmt(self) + " F(|0>,I/2)=" + fmt(pure_vs_mixed)};
}

Outcome criterion_10() {
  const Correlation p = evaluate_pair_representation(chsh_pair_representation());
  const Correlation expected = chsh_optimal();
  double err = 0.0;
  for (std::size_t i = 0; i < p.table().size(); ++i) err = std::max(err, std::abs(p.table()[i] - expected.table()[i]));
  const SignalingReport sig = check_nonsignaling(p, 1e-9);
  return {err <= 1e-9 && sig.is_nonsignaling,
          "max table err=" + fmt(err) + " signaling violation=" + fmt(sig.max_violation)};
}

Outcome criterion_11() {
  const ExtendedBound psd = psd_rank_fidelity_bound(flatten(magic_square()));
  const DimensionBound rounded = guarded_ceiling(psd);
  const ExtendedBound f = f1(magic_square());
  const bool ok = !rounded.is_infinite() && rounded.value() == 2 && f.is_finite() &&
                  static_cast<double>(rounded.value()) < f.value();
  return {ok, "flattened bound=" + to_string(psd) + " (ceil " + to_string(rounded) + "), f1=" + to_string(f) +
                  "; expected ceil 2"};
}

Outcome criterion_12() {
  double lowest = std::numeric_limits<double>::infinity();
  for (std::uint64_t k = 0; k < 200; ++k) {
    const std::uint64_t seed = 12000 + k;
    const Correlation p = evaluate_pair_representation(random_pair_representation(1 + k % 3, sizes_from(seed, 2, 2), seed));
    lowest = std::min({lowest, f1(p).value(), f2(p).value()});
  }
  return {lowest >= 1.0 - 1e-9, "min over f1, f2 = " + fmt(lowest)};
}

Outcome criterion_13() {
  const Correlation chsh = chsh_optimal();
  const RobustnessSummary s = robustness_scan(chsh, 1e-4, 1000, 13);
  const RobustnessSummary still = robustness_scan(chsh, 0.0, 1000, 13);
  const bool ok = s.f1.min >= 1.99 && s.f1.max <= 2.01 && still.f1.max - still.f1.min == 0.0;
  return {ok, "eps=1e-4 f1 in [" + fmt(s.f1.min) + ", " + fmt(s.f1.max) + "], eps=0 width " +
                  fmt(still.f1.max - still.f1.min)};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> expected_fail;
  for (int i = 1; i + 1 < argc; i += 2) {
    if (std::string(argv[i]) != "--expect-fail") {
      std::fprintf(stderr, "usage: acceptance [--expect-fail N]...\n");
      return 2;
    }
    expected_fail.insert(std::stoi(argv[i + 1]));
  }
  const auto reps = soundness_sample();
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1  CHSH f1 = 2, dimension bound 2", criterion_1},
      {"2  Magic Square f1 = 4, dimension bound 4", criterion_2},
      {"3  deterministic trio mixture f1 = 9/4, dimension bound 3", criterion_3},
      {"4  PR-box family f1 = infinity (d = 2..5)", criterion_4},
      {"5  FFL zero pattern f1 = infinity", criterion_5},
      {"6  multiplicativity under products", criterion_6},
      {"7  soundness on 500 random operator representations", [&] { return criterion_7(reps); }},
      {"8  derivation audit on the same 500 representations", [&] { return criterion_8(reps); }},
      {"9  fidelity suite on 200 random state pairs", criterion_9},
      {"10 CHSH pair representation reproduces the table", criterion_10},
      {"11 flattened Magic Square PSD bound rounds to 2 < 4", criterion_11},
      {"12 nonsignaling floor f1, f2 >= 1", criterion_12},
      {"13 robustness scan on CHSH", criterion_13},
  };

  int failed = 0, counted = 0, id = 0;
  for (const auto& [name, check] : criteria) {
    const bool expected = expected_fail.count(++id) > 0;
    Outcome o{false, ""};
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    if (o.pass == expected) ++counted;
    std::printf("[%s] %s :: %s%s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(),
                expected ? (o.pass ? " (expected to fail, now passes)" : " (expected)") : "");
  }
  std::printf("[SKIP] 14 I3322 observations :: needs numerical correlation data that is not available\n");
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return counted == 0 ? 0 : 1;
}
