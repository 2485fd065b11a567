#include "dimbound/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace dimbound {

namespace {

Eigen::Index idx(std::size_t n) { return static_cast<Eigen::Index>(n); }

}  // namespace

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::NotHermitian, "matrix is not square");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double asym = m.rows() == 0 ? 0.0 : (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (asym > tol * scale) {
    std::ostringstream os;
    os << "max |M - M^dagger| entry is " << asym;
    throw Error(ErrorKind::NotHermitian, os.str());
  }
  m_ = 0.5 * (m + m.adjoint());
}

HermitianMatrix HermitianMatrix::identity(std::size_t dim) {
  return HermitianMatrix(ComplexMatrix::Identity(idx(dim), idx(dim)));
}

HermitianMatrix HermitianMatrix::zero(std::size_t dim) {
  return HermitianMatrix(ComplexMatrix::Zero(idx(dim), idx(dim)));
}

HermitianMatrix HermitianMatrix::from_hermitian_part(const ComplexMatrix& m) {
  HermitianMatrix h;
  h.m_ = 0.5 * (m + m.adjoint());
  return h;
}

double HermitianMatrix::spectral_norm() const {
  if (m_.rows() == 0) return 0.0;
  return eigh(*this).values.cwiseAbs().maxCoeff();
}

HermitianMatrix HermitianMatrix::operator+(const HermitianMatrix& o) const {
  if (dim() != o.dim()) throw Error(ErrorKind::DimMismatch, "matrix sum");
  return from_hermitian_part(m_ + o.m_);
}

HermitianMatrix HermitianMatrix::operator-(const HermitianMatrix& o) const {
  if (dim() != o.dim()) throw Error(ErrorKind::DimMismatch, "matrix difference");
  return from_hermitian_part(m_ - o.m_);
}

HermitianMatrix HermitianMatrix::operator*(double s) const { return from_hermitian_part(m_ * s); }

Spectrum eigh(const HermitianMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m.matrix());
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::InvalidArgument, "Hermitian eigendecomposition did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

HermitianMatrix sqrt_psd(const HermitianMatrix& m) {
  if (m.dim() == 0) return m;
  const Spectrum s = eigh(m);
  const double top = s.values.cwiseAbs().maxCoeff();
  const double cutoff = static_cast<double>(m.dim()) * std::numeric_limits<double>::epsilon() * top;
  Eigen::VectorXd root = s.values.unaryExpr([cutoff](double v) { return v > cutoff ? std::sqrt(v) : 0.0; });
  return HermitianMatrix::from_hermitian_part(s.vectors * root.asDiagonal() * s.vectors.adjoint());
}

HermitianMatrix congruence(const HermitianMatrix& m, const ComplexMatrix& x) {
  return HermitianMatrix::from_hermitian_part(x.adjoint() * m.matrix() * x);
}

double trace_product(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::DimMismatch, "trace product");
  // tr(AB) = sum_ij A_ij B_ji = sum_ij A_ij conj(B_ij) for Hermitian B.
  return (a.matrix().array() * b.matrix().conjugate().array()).sum().real();
}

double trace_norm(const ComplexMatrix& m) {
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues().sum();
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::DimMismatch, "entrywise difference");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

PsdCheck psd_check(const HermitianMatrix& m, double tol) {
  if (m.dim() == 0) return {true, 0.0};
  const Spectrum s = eigh(m);
  const double min_eig = s.values.minCoeff();
  const double norm = s.values.cwiseAbs().maxCoeff();
  return {min_eig >= -tol * std::max(1.0, norm), min_eig};
}

QuantumState::QuantumState(HermitianMatrix rho) : rho_(std::move(rho)) {
  if (rho_.dim() == 0) throw Error(ErrorKind::InvalidRepresentation, "empty state");
  const Spectrum s = eigh(rho_);
  const double norm = s.values.cwiseAbs().maxCoeff();
  if (s.values.minCoeff() < -1e-9 * norm) {
    std::ostringstream os;
    os << "state has eigenvalue " << s.values.minCoeff();
    throw Error(ErrorKind::InvalidRepresentation, os.str());
  }
  if (std::abs(rho_.trace() - 1.0) > 1e-9) {
    std::ostringstream os;
    os.precision(17);
    os << "state has trace " << rho_.trace();
    throw Error(ErrorKind::InvalidRepresentation, os.str());
  }
}

double fidelity(const QuantumState& rho, const QuantumState& sigma) {
  if (rho.dim() != sigma.dim()) throw Error(ErrorKind::DimMismatch, "fidelity of states of different dimension");
  const HermitianMatrix a = sqrt_psd(rho.matrix());
  const HermitianMatrix b = sqrt_psd(sigma.matrix());
  return trace_norm(a.matrix() * b.matrix());
}

double purity(const QuantumState& rho) { return trace_product(rho.matrix(), rho.matrix()); }

ComplexMatrix gaussian_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(idx(rows), idx(cols));
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

QuantumState random_state(std::size_t dim, std::mt19937_64& rng) {
  const ComplexMatrix g = gaussian_matrix(dim, dim, rng);
  const ComplexMatrix w = g * g.adjoint();
  return QuantumState(HermitianMatrix::from_hermitian_part(w / w.trace().real()));
}

QuantumState random_pure_state(std::size_t dim, std::mt19937_64& rng) {
  ComplexMatrix v = gaussian_matrix(dim, 1, rng);
  v /= v.norm();
  return QuantumState(HermitianMatrix::from_hermitian_part(v * v.adjoint()));
}

std::vector<HermitianMatrix> random_povm(std::size_t dim, std::size_t outcomes,
                                         std::mt19937_64& rng) {
  const ComplexMatrix g = gaussian_matrix(outcomes * dim, dim, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  const ComplexMatrix iso =
      qr.householderQ() * ComplexMatrix::Identity(idx(outcomes * dim), idx(dim));
  std::vector<HermitianMatrix> povm;
  povm.reserve(outcomes);
  for (std::size_t k = 0; k < outcomes; ++k) {
    const ComplexMatrix block = iso.middleRows(idx(k * dim), idx(dim));
    povm.push_back(HermitianMatrix::from_hermitian_part(block.adjoint() * block));
  }
  return povm;
}

}  // namespace dimbound
