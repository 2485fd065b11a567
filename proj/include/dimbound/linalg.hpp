#pragma once

// Dense complex Hermitian matrices and the spectral functions built on a
// single Hermitian eigendecomposition.

#include <complex>
#include <cstddef>
#include <random>

#include <Eigen/Dense>

#include "dimbound/error.hpp"

namespace dimbound {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

/// Entry (i,j) equals conj(entry(j,i)) within 1e-12 (scaled by the largest
/// entry when that exceeds 1). Stored exactly Hermitian.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  /// Throws NotHermitian.
  explicit HermitianMatrix(const ComplexMatrix& m, double tol = 1e-12);

  static HermitianMatrix identity(std::size_t dim);
  static HermitianMatrix zero(std::size_t dim);
  /// Builds from a matrix already known to be Hermitian up to rounding.
  static HermitianMatrix from_hermitian_part(const ComplexMatrix& m);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  const ComplexMatrix& matrix() const noexcept { return m_; }
  Complex operator()(std::size_t i, std::size_t j) const {
    return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

  double trace() const { return m_.trace().real(); }
  /// Largest absolute eigenvalue.
  double spectral_norm() const;

  HermitianMatrix operator+(const HermitianMatrix& o) const;
  HermitianMatrix operator-(const HermitianMatrix& o) const;
  HermitianMatrix operator*(double s) const;

 private:
  ComplexMatrix m_;
};

/// Ascending eigenvalues with matching orthonormal eigenvector columns.
struct Spectrum {
  Eigen::VectorXd values;
  ComplexMatrix vectors;
};

Spectrum eigh(const HermitianMatrix& m);

/// Principal square root of a PSD matrix; eigenvalues within rounding of
/// zero (or negative) map to 0.
HermitianMatrix sqrt_psd(const HermitianMatrix& m);

/// X^dagger M X, re-Hermitized.
HermitianMatrix congruence(const HermitianMatrix& m, const ComplexMatrix& x);

/// Re tr(A B).
double trace_product(const HermitianMatrix& a, const HermitianMatrix& b);

/// Sum of singular values.
double trace_norm(const ComplexMatrix& m);

/// Largest |a_ij - b_ij|.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

struct PsdCheck {
  bool ok = false;
  double min_eigenvalue = 0.0;
};

/// ok iff min eigenvalue >= -tol * max(1, spectral norm).
PsdCheck psd_check(const HermitianMatrix& m, double tol = 1e-9);

/// Density matrix: PSD (min eigenvalue >= -1e-9 * spectral norm) with unit
/// trace within 1e-9. Throws InvalidRepresentation otherwise.
class QuantumState {
 public:
  explicit QuantumState(HermitianMatrix rho);

  std::size_t dim() const noexcept { return rho_.dim(); }
  const HermitianMatrix& matrix() const noexcept { return rho_; }

 private:
  HermitianMatrix rho_;
};

/// || sqrt(rho) sqrt(sigma) ||_1. Throws DimMismatch.
double fidelity(const QuantumState& rho, const QuantumState& sigma);

/// tr(rho^2).
double purity(const QuantumState& rho);

/// Complex matrix with i.i.d. standard normal real and imaginary parts,
/// drawn row by row, real part first.
ComplexMatrix gaussian_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng);

/// G G^dagger / tr(G G^dagger) for a Gaussian G (full rank almost surely).
QuantumState random_state(std::size_t dim, std::mt19937_64& rng);

/// |psi><psi| for a Gaussian unit vector.
QuantumState random_pure_state(std::size_t dim, std::mt19937_64& rng);

/// POVM {V_k^dagger V_k} from the row blocks V_k of a Haar-like isometry
/// obtained by QR of an (outcomes*dim) x dim Gaussian matrix.
std::vector<HermitianMatrix> random_povm(std::size_t dim, std::size_t outcomes,
                                         std::mt19937_64& rng);

}  // namespace dimbound
