#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "dimbound/linalg.hpp"

using namespace dimbound;

namespace {

HermitianMatrix diag(std::initializer_list<double> values) {
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(values.size()), static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double v : values) m(i, i) = v, ++i;
  return HermitianMatrix(m);
}

QuantumState basis_state(std::size_t dim, std::size_t k) {
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = 1.0;
  return QuantumState(HermitianMatrix(m));
}

}  // namespace

TEST_CASE("Hermitian construction") {
  ComplexMatrix m(2, 2);
  m << 1.0, Complex(0.0, 1.0), Complex(0.0, 1.0), 2.0;
  try {
    HermitianMatrix h(m);
    FAIL("accepted a non-Hermitian matrix");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotHermitian);
  }
  m(1, 0) = Complex(0.0, -1.0);
  const HermitianMatrix h(m);
  CHECK(h(0, 1) == std::conj(h(1, 0)));
  CHECK(h.trace() == 3.0);
}

TEST_CASE("eigendecomposition reconstructs random Hermitian matrices") {
  std::mt19937_64 rng(1);
  for (std::size_t dim : {1u, 2u, 5u, 16u, 64u}) {
    const ComplexMatrix g = gaussian_matrix(dim, dim, rng);
    const HermitianMatrix h = HermitianMatrix::from_hermitian_part(g);
    const Spectrum s = eigh(h);
    const ComplexMatrix rebuilt = s.vectors * s.values.cast<Complex>().asDiagonal() * s.vectors.adjoint();
    CHECK(max_abs_diff(rebuilt, h.matrix()) <= 1e-10);
  }
}

TEST_CASE("psd check") {
  const auto id = psd_check(HermitianMatrix::identity(3));
  CHECK(id.ok);
  CHECK(id.min_eigenvalue == doctest::Approx(1.0));

  const auto neg = psd_check(diag({1.0, -0.5}));
  CHECK_FALSE(neg.ok);
  CHECK(neg.min_eigenvalue == doctest::Approx(-0.5));

  ComplexMatrix v(2, 1);
  v << 1.0 / std::sqrt(2.0), Complex(0.0, 1.0 / std::sqrt(2.0));
  const auto proj = psd_check(HermitianMatrix(v * v.adjoint()));
  CHECK(proj.ok);
  CHECK(std::abs(proj.min_eigenvalue) <= 1e-15);

  // Tolerance scales with the spectral norm.
  CHECK(psd_check(diag({1e6, -1e-4}), 1e-9).ok);
  CHECK_FALSE(psd_check(diag({1.0, -1e-4}), 1e-9).ok);
}

TEST_CASE("square roots") {
  std::mt19937_64 rng(4);
  const QuantumState rho = random_state(4, rng);
  const HermitianMatrix root = sqrt_psd(rho.matrix());
  CHECK(max_abs_diff(root.matrix() * root.matrix(), rho.matrix().matrix()) <= 1e-13);
  CHECK(psd_check(root).ok);
}

TEST_CASE("state invariants") {
  CHECK_THROWS_AS(QuantumState(diag({0.5, 0.4})), Error);
  CHECK_THROWS_AS(QuantumState(diag({1.2, -0.2})), Error);
  CHECK_NOTHROW(QuantumState(diag({0.75, 0.25})));
}

TEST_CASE("fidelity examples") {
  std::mt19937_64 rng(8);
  const QuantumState rho = random_state(3, rng);
  CHECK(fidelity(rho, rho) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fidelity(basis_state(2, 0), basis_state(2, 1)) <= 1e-15);
  const QuantumState mixed(diag({0.5, 0.5}));
  CHECK(fidelity(basis_state(2, 0), mixed) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(fidelity(basis_state(2, 0), basis_state(3, 0)), Error);
}

TEST_CASE("fidelity of pure states is |<psi|phi>|") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    ComplexMatrix u = gaussian_matrix(3, 1, rng), v = gaussian_matrix(3, 1, rng);
    u /= u.norm();
    v /= v.norm();
    const QuantumState a(HermitianMatrix::from_hermitian_part(u * u.adjoint()));
    const QuantumState b(HermitianMatrix::from_hermitian_part(v * v.adjoint()));
    CHECK(fidelity(a, b) == doctest::Approx(std::abs((u.adjoint() * v)(0, 0))).epsilon(1e-10));
  }
}

TEST_CASE("fidelity properties on random pairs") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t dim = 2 + static_cast<std::size_t>(trial % 5);
    const QuantumState rho = trial % 3 == 0 ? random_pure_state(dim, rng) : random_state(dim, rng);
    const QuantumState sigma = random_state(dim, rng);
    const double f = fidelity(rho, sigma);
    CHECK(f >= 0.0);
    CHECK(f <= 1.0 + 1e-9);
    CHECK(std::abs(f - fidelity(sigma, rho)) <= 1e-9);
    CHECK(trace_product(rho.matrix(), sigma.matrix()) <= f * f + 1e-9);

    const auto povm = random_povm(dim, 3, rng);
    double measured = 0.0;
    for (const auto& e : povm) {
      measured += std::sqrt(std::max(0.0, trace_product(e, rho.matrix())) * std::max(0.0, trace_product(e, sigma.matrix())));
    }
    CHECK(f <= measured + 1e-9);
  }
}

TEST_CASE("purity") {
  std::mt19937_64 rng(6);
  CHECK(purity(random_pure_state(4, rng)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(purity(QuantumState(HermitianMatrix::identity(5) * 0.2)) == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(purity(QuantumState(diag({0.75, 0.25}))) == 0.625);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t dim = 1 + static_cast<std::size_t>(trial % 6);
    CHECK(purity(random_state(dim, rng)) >= 1.0 / static_cast<double>(dim) - 1e-9);
  }
}

TEST_CASE("random POVMs complete to the identity") {
  std::mt19937_64 rng(10);
  for (std::size_t dim : {1u, 2u, 4u}) {
    for (std::size_t outcomes : {1u, 2u, 5u}) {
      const auto povm = random_povm(dim, outcomes, rng);
      ComplexMatrix total = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
      for (const auto& e : povm) {
        CHECK(psd_check(e).ok);
        total += e.matrix();
      }
      CHECK(max_abs_diff(total, ComplexMatrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim))) <= 1e-12);
    }
  }
}
