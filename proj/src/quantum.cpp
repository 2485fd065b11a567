#include "dimbound/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <sstream>

#include "dimbound/bounds.hpp"

namespace dimbound {

namespace {

Eigen::Index idx(std::size_t n) { return static_cast<Eigen::Index>(n); }

[[noreturn]] void invalid(const std::string& what) {
  throw Error(ErrorKind::InvalidRepresentation, what);
}

HermitianMatrix sum_of(const std::vector<HermitianMatrix>& ms, std::size_t dim) {
  ComplexMatrix acc = ComplexMatrix::Zero(idx(dim), idx(dim));
  for (const auto& m : ms) acc += m.matrix();
  return HermitianMatrix::from_hermitian_part(acc);
}

void check_table_shape(const std::vector<std::vector<HermitianMatrix>>& t, std::size_t dim,
                       const char* name) {
  if (t.empty() || t.front().empty()) invalid(std::string(name) + " family is empty");
  for (const auto& row : t) {
    if (row.size() != t.front().size()) invalid(std::string(name) + " settings have different outcome counts");
    for (const auto& m : row)
      if (m.dim() != dim) invalid(std::string(name) + " element has wrong dimension");
  }
}

HermitianMatrix transpose_of(const HermitianMatrix& m) {
  return HermitianMatrix::from_hermitian_part(m.matrix().transpose());
}

}  // namespace

void validate_povm_family(const POVMFamily& family, std::size_t dim, double tol) {
  check_table_shape(family.elements, dim, "POVM");
  const ComplexMatrix id = ComplexMatrix::Identity(idx(dim), idx(dim));
  for (std::size_t x = 0; x < family.inputs(); ++x) {
    for (const auto& m : family.elements[x]) {
      const PsdCheck c = psd_check(m, tol);
      if (!c.ok) {
        std::ostringstream os;
        os << "POVM element for setting " << x << " has eigenvalue " << c.min_eigenvalue;
        invalid(os.str());
      }
    }
    const double err = max_abs_diff(sum_of(family.elements[x], dim).matrix(), id);
    if (err > tol) {
      std::ostringstream os;
      os << "POVM for setting " << x << " misses the identity by " << err;
      invalid(os.str());
    }
  }
}

Sizes OperatorRepresentation::sizes() const {
  return {E.size(), F.size(), E.empty() ? 0 : E.front().size(), F.empty() ? 0 : F.front().size()};
}

Correlation evaluate_pair_representation(const PairRepresentation& rep) {
  const std::size_t d = rep.local_dim;
  if (d == 0 || rep.state.dim() != d * d) invalid("state dimension must be local_dim^2");
  validate_povm_family(rep.alice, d);
  validate_povm_family(rep.bob, d);

  const Sizes s{rep.alice.inputs(), rep.bob.inputs(), rep.alice.outputs(), rep.bob.outputs()};
  const ComplexMatrix& rho = rep.state.matrix().matrix();
  std::vector<double> table(s.table_size());
  for (std::size_t x = 0; x < s.nx; ++x)
    for (std::size_t y = 0; y < s.ny; ++y)
      for (std::size_t a = 0; a < s.na; ++a)
        for (std::size_t b = 0; b < s.nb; ++b) {
          const ComplexMatrix& m = rep.alice.elements[x][a].matrix();
          const ComplexMatrix& n = rep.bob.elements[y][b].matrix();
          // tr((M (x) N) rho) = sum M_ij N_kl rho_{(j,l),(i,k)}
          Complex acc = 0.0;
          for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
              const Complex mij = m(idx(i), idx(j));
              if (mij == Complex(0.0)) continue;
              for (std::size_t k = 0; k < d; ++k)
                for (std::size_t l = 0; l < d; ++l)
                  acc += mij * n(idx(k), idx(l)) * rho(idx(j * d + l), idx(i * d + k));
            }
          table[((x * s.ny + y) * s.na + a) * s.nb + b] = acc.real();
        }
  return Correlation::validate(std::move(table), s);
}

PairRepresentation chsh_pair_representation() {
  const double r = 1.0 / std::sqrt(2.0);
  ComplexMatrix z(2, 2), xm(2, 2);
  z << 1, 0, 0, -1;
  xm << 0, 1, 1, 0;
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);

  auto projective = [&](const ComplexMatrix& obs) {
    return std::vector<HermitianMatrix>{HermitianMatrix(0.5 * (id + obs)),
                                        HermitianMatrix(0.5 * (id - obs))};
  };
  POVMFamily alice{{projective(z), projective(xm)}};
  POVMFamily bob{{projective(r * (z + xm)), projective(r * (z - xm))}};

  ComplexMatrix phi = ComplexMatrix::Zero(4, 1);
  phi(0, 0) = r;
  phi(3, 0) = r;
  return {2, QuantumState(HermitianMatrix(phi * phi.adjoint())), std::move(alice), std::move(bob)};
}

OperatorRepresentation operator_representation_from_maximally_entangled(const POVMFamily& alice,
                                                                        const POVMFamily& bob) {
  if (alice.elements.empty() || alice.elements.front().empty()) invalid("empty POVM family");
  const std::size_t d = alice.elements.front().front().dim();
  validate_povm_family(alice, d);
  validate_povm_family(bob, d);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  OperatorRepresentation orep{d, {}, {}};
  for (const auto& row : alice.elements) {
    auto& out = orep.E.emplace_back();
    for (const auto& m : row) out.push_back(m * scale);
  }
  for (const auto& row : bob.elements) {
    auto& out = orep.F.emplace_back();
    for (const auto& n : row) out.push_back(transpose_of(n) * scale);
  }
  return orep;
}

namespace {

std::vector<double> raw_induced_table(const OperatorRepresentation& orep) {
  check_table_shape(orep.E, orep.dim, "E");
  check_table_shape(orep.F, orep.dim, "F");
  const Sizes s = orep.sizes();
  std::vector<double> table(s.table_size());
  for (std::size_t x = 0; x < s.nx; ++x)
    for (std::size_t y = 0; y < s.ny; ++y)
      for (std::size_t a = 0; a < s.na; ++a)
        for (std::size_t b = 0; b < s.nb; ++b)
          table[((x * s.ny + y) * s.na + a) * s.nb + b] = trace_product(orep.E[x][a], orep.F[y][b]);
  return table;
}

}  // namespace

Correlation induced_correlation(const OperatorRepresentation& orep, double tol) {
  return Correlation::validate(raw_induced_table(orep), orep.sizes(), tol);
}

VerificationReport verify_operator_representation(const OperatorRepresentation& orep,
                                                  const Correlation& p, double tol) {
  if (orep.sizes() != p.sizes()) throw Error(ErrorKind::ShapeMismatch, "representation and correlation sizes differ");
  check_table_shape(orep.E, orep.dim, "E");
  check_table_shape(orep.F, orep.dim, "F");

  VerificationReport r;
  const std::vector<double> table = raw_induced_table(orep);
  for (std::size_t i = 0; i < table.size(); ++i) {
    r.condition1_max_err = std::max(r.condition1_max_err, std::abs(table[i] - p.table()[i]));
  }

  const HermitianMatrix common = sum_of(orep.E.front(), orep.dim);
  for (const auto& row : orep.E)
    r.condition3_max_err = std::max(r.condition3_max_err, max_abs_diff(sum_of(row, orep.dim).matrix(), common.matrix()));
  for (const auto& row : orep.F)
    r.condition3_max_err = std::max(r.condition3_max_err, max_abs_diff(sum_of(row, orep.dim).matrix(), common.matrix()));

  for (const auto* family : {&orep.E, &orep.F})
    for (const auto& row : *family)
      for (const auto& m : row) r.psd_ok = r.psd_ok && psd_check(m, tol).ok;

  r.verdict = r.psd_ok && r.condition1_max_err <= tol && r.condition3_max_err <= tol;
  return r;
}

AuditReport audit_derivation(const OperatorRepresentation& orep, double tol) {
  check_table_shape(orep.E, orep.dim, "E");
  check_table_shape(orep.F, orep.dim, "F");
  const Sizes s = orep.sizes();
  AuditReport rep;
  rep.dim = orep.dim;

  // Restrict everything to the support of the common sum. Working in the
  // eigenbasis of S makes S and its powers diagonal.
  const HermitianMatrix common = sum_of(orep.E.front(), orep.dim);
  const Spectrum spec = eigh(common);
  const double top = spec.values.cwiseAbs().maxCoeff();
  std::vector<Eigen::Index> support;
  for (Eigen::Index i = 0; i < spec.values.size(); ++i)
    if (spec.values(i) > 1e-10 * top) support.push_back(i);
  if (support.empty()) invalid("common sum of E is zero");
  const std::size_t r = support.size();
  rep.common_sum_rank = r;

  ComplexMatrix basis(idx(orep.dim), idx(r));
  Eigen::VectorXd lambda(idx(r));
  for (std::size_t k = 0; k < r; ++k) {
    basis.col(idx(k)) = spec.vectors.col(support[k]);
    lambda(idx(k)) = spec.values(support[k]);
  }
  const ComplexMatrix s_half = lambda.cwiseSqrt().cast<Complex>().asDiagonal();
  const ComplexMatrix s_inv_half = lambda.cwiseSqrt().cwiseInverse().cast<Complex>().asDiagonal();
  const ComplexMatrix s_full = lambda.cast<Complex>().asDiagonal();
  const ComplexMatrix id = ComplexMatrix::Identity(idx(r), idx(r));

  // E'_xa = U E_xa U^dagger with U = S^{-1/2}.
  std::vector<std::vector<HermitianMatrix>> e_prime(s.nx);
  for (std::size_t x = 0; x < s.nx; ++x) {
    ComplexMatrix total = ComplexMatrix::Zero(idx(r), idx(r));
    for (const auto& e : orep.E[x]) {
      const HermitianMatrix restricted = congruence(e, basis);
      e_prime[x].push_back(congruence(restricted, s_inv_half));
      total += e_prime[x].back().matrix();
    }
    rep.povm_completeness_err = std::max(rep.povm_completeness_err, max_abs_diff(total, id));
  }

  // f_yb and the normalized states F'_yb.
  constexpr double kWeightFloor = 1e-12;
  rep.f_weights.assign(s.ny, std::vector<double>(s.nb, 0.0));
  std::vector<std::vector<std::optional<QuantumState>>> f_states(s.ny);
  std::vector<HermitianMatrix> rho(s.ny);
  bool states_ok = true;
  for (std::size_t y = 0; y < s.ny; ++y) {
    ComplexMatrix rho_y = ComplexMatrix::Zero(idx(r), idx(r));
    double weight_sum = 0.0;
    for (std::size_t b = 0; b < s.nb; ++b) {
      const HermitianMatrix restricted = congruence(orep.F[y][b], basis);
      const HermitianMatrix scaled = congruence(restricted, s_half);  // S^{1/2} F S^{1/2}
      const double f = trace_product(HermitianMatrix::from_hermitian_part(s_full), restricted);
      rep.f_weights[y][b] = f;
      weight_sum += f;
      rho_y += scaled.matrix();
      if (f > kWeightFloor) {
        try {
          f_states[y].emplace_back(QuantumState(scaled * (1.0 / f)));
        } catch (const Error&) {
          states_ok = false;
          f_states[y].emplace_back(std::nullopt);
        }
      } else {
        f_states[y].emplace_back(std::nullopt);
      }
    }
    rep.weight_normalization_err = std::max(rep.weight_normalization_err, std::abs(weight_sum - 1.0));
    rho[y] = HermitianMatrix::from_hermitian_part(rho_y);
  }

  // Rescaled form p = f tr(E' F') and the fidelity chain for every pair.
  const std::vector<double> table = raw_induced_table(orep);
  auto p_at = [&](std::size_t x, std::size_t y, std::size_t a, std::size_t b) {
    return table[((x * s.ny + y) * s.na + a) * s.nb + b];
  };
  for (std::size_t x = 0; x < s.nx; ++x)
    for (std::size_t y = 0; y < s.ny; ++y)
      for (std::size_t a = 0; a < s.na; ++a)
        for (std::size_t b = 0; b < s.nb; ++b) {
          const auto& st = f_states[y][b];
          const double rescaled = st ? rep.f_weights[y][b] * trace_product(e_prime[x][a], st->matrix()) : 0.0;
          rep.rescaling_residual = std::max(rep.rescaling_residual, std::abs(p_at(x, y, a, b) - rescaled));
        }

  rep.fidelity_monotonicity_violation = -std::numeric_limits<double>::infinity();
  rep.trace_fidelity_violation = -std::numeric_limits<double>::infinity();
  for (std::size_t y1 = 0; y1 < s.ny; ++y1)
    for (std::size_t b1 = 0; b1 < s.nb; ++b1)
      for (std::size_t y2 = 0; y2 < s.ny; ++y2)
        for (std::size_t b2 = 0; b2 < s.nb; ++b2) {
          const auto& st1 = f_states[y1][b1];
          const auto& st2 = f_states[y2][b2];
          if (!st1 || !st2) continue;
          const double fid = fidelity(*st1, *st2);
          for (std::size_t x = 0; x < s.nx; ++x) {
            double measured = 0.0;
            for (std::size_t a = 0; a < s.na; ++a) {
              const double q1 = std::max(0.0, trace_product(e_prime[x][a], st1->matrix()));
              const double q2 = std::max(0.0, trace_product(e_prime[x][a], st2->matrix()));
              measured += std::sqrt(q1) * std::sqrt(q2);
            }
            rep.fidelity_monotonicity_violation = std::max(rep.fidelity_monotonicity_violation, fid - measured);
          }
          const double overlap_tr = trace_product(st1->matrix(), st2->matrix());
          rep.trace_fidelity_violation = std::max(rep.trace_fidelity_violation, overlap_tr - fid * fid);
        }

  // rho_y must not depend on y, and its purity is at least 1/rank.
  rep.purity_floor_violation = -std::numeric_limits<double>::infinity();
  for (std::size_t y = 0; y < s.ny; ++y) {
    rep.rho_y_max_discrepancy = std::max(rep.rho_y_max_discrepancy, max_abs_diff(rho[y].matrix(), rho[0].matrix()));
    const double pur = trace_product(rho[y], rho[y]);
    rep.purity_values.push_back(pur);
    rep.purity_floor_violation = std::max(rep.purity_floor_violation, 1.0 / static_cast<double>(r) - pur);
  }

  // The chain bounds each bracket from below by tr(rho_y1 rho_y2).
  std::optional<Correlation> induced;
  try {
    induced = Correlation::validate(table, s, std::max(tol, kDefaultTol));
  } catch (const Error&) {
  }
  rep.bracket_violation = -std::numeric_limits<double>::infinity();
  double implied = 0.0;
  for (std::size_t y1 = 0; y1 < s.ny; ++y1)
    for (std::size_t y2 = 0; y2 < s.ny; ++y2) {
      const double cross = trace_product(rho[y1], rho[y2]);
      implied = std::max(implied, cross > 0.0 ? 1.0 / cross : std::numeric_limits<double>::infinity());
      if (induced) rep.bracket_violation = std::max(rep.bracket_violation, cross - bob_bracket(*induced, y1, y2));
    }
  rep.implied_f1_upper = implied;
  rep.f1 = induced ? f1(*induced).value() : std::numeric_limits<double>::quiet_NaN();

  const double rank = static_cast<double>(r);
  rep.chain_holds = states_ok && induced.has_value() &&
                    rep.povm_completeness_err <= tol && rep.weight_normalization_err <= tol &&
                    rep.rescaling_residual <= tol && rep.fidelity_monotonicity_violation <= tol &&
                    rep.trace_fidelity_violation <= tol && rep.rho_y_max_discrepancy <= tol &&
                    rep.purity_floor_violation <= tol && rep.bracket_violation <= tol &&
                    rep.f1 <= rep.implied_f1_upper * (1.0 + tol) && rep.implied_f1_upper <= rank + 1e-6;
  return rep;
}

OperatorRepresentation random_operator_representation(std::size_t d, Sizes sizes, std::uint64_t seed) {
  if (d == 0) throw Error(ErrorKind::BadDimension, "d must be positive");
  if (sizes.table_size() == 0) throw Error(ErrorKind::ShapeMismatch, "alphabet sizes must be positive");
  std::mt19937_64 rng(seed);
  const ComplexMatrix g = gaussian_matrix(d, d, rng);
  const HermitianMatrix raw = HermitianMatrix::from_hermitian_part(g * g.adjoint());
  const HermitianMatrix sigma = raw * (1.0 / std::sqrt(trace_product(raw, raw)));
  const ComplexMatrix root = sqrt_psd(sigma).matrix();

  OperatorRepresentation orep{d, {}, {}};
  for (std::size_t x = 0; x < sizes.nx; ++x) {
    auto& row = orep.E.emplace_back();
    for (const auto& m : random_povm(d, sizes.na, rng)) row.push_back(congruence(m, root));
  }
  for (std::size_t y = 0; y < sizes.ny; ++y) {
    auto& row = orep.F.emplace_back();
    for (const auto& m : random_povm(d, sizes.nb, rng)) row.push_back(congruence(m, root));
  }
  return orep;
}

PairRepresentation random_pair_representation(std::size_t d, Sizes sizes, std::uint64_t seed) {
  if (d == 0) throw Error(ErrorKind::BadDimension, "d must be positive");
  if (sizes.table_size() == 0) throw Error(ErrorKind::ShapeMismatch, "alphabet sizes must be positive");
  std::mt19937_64 rng(seed);
  QuantumState state = random_state(d * d, rng);
  POVMFamily alice, bob;
  for (std::size_t x = 0; x < sizes.nx; ++x) alice.elements.push_back(random_povm(d, sizes.na, rng));
  for (std::size_t y = 0; y < sizes.ny; ++y) bob.elements.push_back(random_povm(d, sizes.nb, rng));
  return {d, std::move(state), std::move(alice), std::move(bob)};
}

}  // namespace dimbound
