#include <doctest.h>

#include <random>

#include "bellscope/complex_matrix.hpp"
#include "bellscope/error.hpp"
#include "bellscope/kernels/kernels.hpp"

using namespace bellscope;

namespace {

ComplexMatrix random_matrix(std::mt19937_64& rng, std::size_t d) {
  std::normal_distribution<double> g;
  ComplexMatrix m(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) = {g(rng), g(rng)};
  return m;
}

ComplexMatrix naive_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix c(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      for (std::size_t k = 0; k < a.dim(); ++k) c(i, j) += a(i, k) * b(k, j);
  return c;
}

}  // namespace

TEST_CASE("Pauli algebra") {
  const auto x = pauli(1), y = pauli(2), z = pauli(3);
  const auto one = ComplexMatrix::identity(2);
  for (const auto& s : {x, y, z}) {
    CHECK((s * s - one).max_abs() == 0.0);
    CHECK(s.is_hermitian(1e-15));
    CHECK(s.trace() == cdouble(0.0));
  }
  CHECK((x * y - cdouble(0, 1) * z).max_abs() == 0.0);
  CHECK(commutator(x, y).max_abs() == doctest::Approx(2.0));
  CHECK_THROWS_AS(pauli(4), Error);
}

TEST_CASE("Kronecker product and trace") {
  const auto zz = pauli(3).kron(pauli(3));
  CHECK(zz.dim() == 4);
  CHECK(zz(0, 0) == cdouble(1.0));
  CHECK(zz(1, 1) == cdouble(-1.0));
  CHECK(zz(3, 3) == cdouble(1.0));
  const auto half = 0.5 * (ComplexMatrix::identity(2) + pauli(3));
  CHECK(half.kron(ComplexMatrix::identity(2)).trace() == cdouble(2.0));
  CHECK(half.is_projection(1e-15));
  CHECK_FALSE(pauli(1).is_projection(1e-10));
}

TEST_CASE("property: products match a naive triple loop on both kernel levels") {
  std::mt19937_64 rng(83);
  const auto saved = kernels::active_level();
  for (auto level : {kernels::SimdLevel::scalar, kernels::SimdLevel::avx2}) {
    kernels::set_active_level(level);
    for (std::size_t d : {1u, 2u, 3u, 4u, 5u, 8u}) {
      const auto a = random_matrix(rng, d), b = random_matrix(rng, d);
      CHECK((a * b - naive_product(a, b)).max_abs() <= 1e-12);
      CHECK(std::abs(trace_product(a, b) - naive_product(a, b).trace()) <= 1e-12);
      CHECK(((a * b).adjoint() - b.adjoint() * a.adjoint()).max_abs() <= 1e-12);
    }
  }
  kernels::set_active_level(saved);
}

TEST_CASE("Hermitian spectra") {
  const auto ev = hermitian_eigenvalues(pauli(2));
  REQUIRE(ev.size() == 2);
  CHECK(ev[0] == doctest::Approx(-1.0));
  CHECK(ev[1] == doctest::Approx(1.0));
  const std::vector<double> diag{0.0, 2.0, 0.0, 1.0};
  const auto kernel = hermitian_kernel(ComplexMatrix::diagonal(diag), 1e-8);
  CHECK(kernel.size() == 2);
}

TEST_CASE("spectral norm by power iteration") {
  CHECK(spectral_norm(pauli(1)) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(spectral_norm(3.0 * ComplexMatrix::identity(4)) == doctest::Approx(3.0).epsilon(1e-10));
  const std::vector<double> diag{0.5, -2.0, 1.0};
  CHECK(spectral_norm(ComplexMatrix::diagonal(diag)) == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(spectral_norm(ComplexMatrix(3)) == 0.0);
  std::mt19937_64 rng(89);
  for (int k = 0; k < 20; ++k) {
    auto a = random_matrix(rng, 4);
    const auto h = a + a.adjoint();
    const auto ev = hermitian_eigenvalues(h);
    const double expected = std::max(std::abs(ev.front()), std::abs(ev.back()));
    CHECK(spectral_norm(h) == doctest::Approx(expected).epsilon(1e-6));
  }
}

TEST_CASE("matrix construction errors") {
  CHECK_THROWS_AS(ComplexMatrix(2, std::vector<cdouble>(3)), Error);
  CHECK_THROWS_AS(ComplexMatrix(2) + ComplexMatrix(3), Error);
}
