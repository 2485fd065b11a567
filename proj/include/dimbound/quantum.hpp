#pragma once

// Quantum representations of correlations: Born-rule evaluation of a shared
// state with local POVMs, verification of PSD operator families, and a
// numerical replay of why the overlap bounds hold.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dimbound/correlation.hpp"
#include "dimbound/linalg.hpp"

namespace dimbound {

/// elements[x][a] = M_xa.
struct POVMFamily {
  std::vector<std::vector<HermitianMatrix>> elements;

  std::size_t inputs() const noexcept { return elements.size(); }
  std::size_t outputs() const noexcept { return elements.empty() ? 0 : elements.front().size(); }
};

/// Throws InvalidRepresentation unless every element is d x d and PSD and
/// each setting sums to the identity within tol entrywise.
void validate_povm_family(const POVMFamily& family, std::size_t dim, double tol = kDefaultTol);

/// Shared state on C^d (x) C^d, index (i, k) -> i*d + k, plus local POVMs.
struct PairRepresentation {
  std::size_t local_dim = 0;
  QuantumState state;
  POVMFamily alice;
  POVMFamily bob;
};

/// PSD families with tr(E_xa F_yb) = p(ab|xy) and a setting-independent sum.
struct OperatorRepresentation {
  std::size_t dim = 0;
  std::vector<std::vector<HermitianMatrix>> E;  // [x][a]
  std::vector<std::vector<HermitianMatrix>> F;  // [y][b]

  Sizes sizes() const;
};

/// p(ab|xy) = tr((M_xa (x) N_yb) rho). Throws InvalidRepresentation.
Correlation evaluate_pair_representation(const PairRepresentation& rep);

/// Textbook CHSH strategy: (|00> + |11>)/sqrt2, Alice Z and X, Bob
/// (Z + X)/sqrt2 and (Z - X)/sqrt2, outcome 0 on the +1 eigenspace.
PairRepresentation chsh_pair_representation();

/// For the maximally entangled state, tr((M (x) N) Phi) = tr(M N^T)/d, so
/// E_xa = M_xa/sqrt(d), F_yb = N_yb^T/sqrt(d).
OperatorRepresentation operator_representation_from_maximally_entangled(const POVMFamily& alice,
                                                                        const POVMFamily& bob);

/// Table of tr(E_xa F_yb), validated at tol. Throws NotNormalized when the
/// common-sum condition fails badly enough to break normalization.
Correlation induced_correlation(const OperatorRepresentation& orep, double tol = kDefaultTol);

struct VerificationReport {
  double condition1_max_err = 0.0;  // max |tr(E_xa F_yb) - p(ab|xy)|
  double condition3_max_err = 0.0;  // max entrywise spread of the per-setting sums
  bool psd_ok = true;
  bool verdict = false;
};

/// Throws ShapeMismatch when the families and the table disagree on sizes.
VerificationReport verify_operator_representation(const OperatorRepresentation& orep,
                                                  const Correlation& p, double tol = kDefaultTol);

struct AuditReport {
  std::size_t dim = 0;
  /// Rank of S = sum_a E_0a; the replay runs on its support.
  std::size_t common_sum_rank = 0;
  std::vector<std::vector<double>> f_weights;  // [y][b] = tr(S F_yb)
  double povm_completeness_err = 0.0;          // max |sum_a U E_xa U^dagger - I|
  double weight_normalization_err = 0.0;       // max_y |sum_b f_yb - 1|
  double rescaling_residual = 0.0;             // max |p - f_yb tr(E'_xa F'_yb)|
  double fidelity_monotonicity_violation = 0.0;  // max of F(F'1, F'2) - sum_a sqrt(.)sqrt(.)
  double trace_fidelity_violation = 0.0;         // max of tr(F'1 F'2) - F^2
  double rho_y_max_discrepancy = 0.0;
  std::vector<double> purity_values;  // [y] = tr(rho_y^2)
  double purity_floor_violation = 0.0;  // max_y of 1/rank - tr(rho_y^2)
  double bracket_violation = 0.0;       // max of tr(rho_y1 rho_y2) - bracket(y1, y2)
  double f1 = 0.0;                      // NaN when the induced table is not a correlation
  /// max over (y1, y2) of 1 / tr(rho_y1 rho_y2); at most the rank.
  double implied_f1_upper = 0.0;
  bool chain_holds = false;
};

/// With S = sum_a E_0a restricted to its support (eigenvalue cutoff 1e-10
/// relative to the largest), U = S^{-1/2}: E'_xa = U E_xa U, f_yb = tr(S F_yb),
/// F'_yb = S^{1/2} F_yb S^{1/2} / f_yb, rho_y = sum_b f_yb F'_yb. Every
/// inequality is checked at tol; chain_holds iff all hold and f1 of the
/// induced table is within tol of (at most) implied_f1_upper <= rank + 1e-6.
AuditReport audit_derivation(const OperatorRepresentation& orep, double tol = 1e-8);

/// Draw order from std::mt19937_64(seed): sigma's Gaussian (d x d), then
/// Alice's POVMs for x = 0.., then Bob's for y = 0... sigma = G G^dagger
/// scaled to tr(sigma^2) = 1; E_xa = sigma^{1/2} A_xa sigma^{1/2}, likewise F.
OperatorRepresentation random_operator_representation(std::size_t d, Sizes sizes,
                                                      std::uint64_t seed);

/// Draw order: state (d^2 x d^2 Gaussian), Alice's POVMs, Bob's POVMs.
PairRepresentation random_pair_representation(std::size_t d, Sizes sizes, std::uint64_t seed);

// Representation JSON. Matrices are row-major arrays of [re, im] pairs.
std::string to_json(const PairRepresentation& rep);
std::string to_json(const OperatorRepresentation& orep);
/// Throws ParseError, or InvalidRepresentation / NotHermitian for bad content.
PairRepresentation pair_representation_from_json(std::string_view text);
OperatorRepresentation operator_representation_from_json(std::string_view text);

std::string to_json(const VerificationReport& r);
std::string to_json(const AuditReport& r);

}  // namespace dimbound
