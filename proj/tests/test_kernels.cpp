#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "bellscope/kernels/kernels.hpp"

using namespace bellscope::kernels;

namespace {

struct LevelGuard {
  SimdLevel saved = active_level();
  ~LevelGuard() { set_active_level(saved); }
};

std::vector<double> reals(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> d;
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

std::vector<cdouble> complexes(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> d;
  std::vector<cdouble> v(n);
  for (auto& z : v) z = {d(rng), d(rng)};
  return v;
}

}  // namespace

TEST_CASE("kernel levels") {
  LevelGuard guard;
  set_active_level(SimdLevel::scalar);
  CHECK(active_level() == SimdLevel::scalar);
  set_active_level(SimdLevel::avx2);
  CHECK(active_level() == detected_level());
  CHECK(to_string(SimdLevel::avx2) == "avx2");
}

TEST_CASE("kernel scalar reference values") {
  std::vector<double> x{1, 2, 3}, y{4, 5, 6};
  CHECK(scalar::dot(x.data(), y.data(), 3) == 32.0);
  scalar::axpy(2.0, x.data(), y.data(), 3);
  CHECK(y == std::vector<double>{6, 9, 12});
  std::vector<cdouble> a{{1, 1}, {0, 2}}, b{{1, -1}, {3, 0}};
  CHECK(scalar::cdot(a.data(), b.data(), 2) == cdouble(2, 6));
  scalar::caxpy({0, 1}, a.data(), b.data(), 2);
  CHECK(b[0] == cdouble(0, 0));
  CHECK(b[1] == cdouble(1, 0));
}

TEST_CASE("kernel avx2 variants match the scalar reference") {
  if (detected_level() != SimdLevel::avx2) {
    MESSAGE("AVX2 not available; equivalence test skipped");
    return;
  }
  std::mt19937_64 rng(3);
  for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 16u, 31u, 64u, 257u}) {
    const auto x = reals(rng, n);
    auto y1 = reals(rng, n);
    auto y2 = y1;
    scalar::axpy(-0.75, x.data(), y1.data(), n);
    avx2::axpy(-0.75, x.data(), y2.data(), n);
    for (std::size_t k = 0; k < n; ++k) CHECK(y2[k] == doctest::Approx(y1[k]).epsilon(1e-14));
    CHECK(avx2::dot(x.data(), y1.data(), n) == doctest::Approx(scalar::dot(x.data(), y1.data(), n)).epsilon(1e-12));

    const auto a = complexes(rng, n);
    auto b1 = complexes(rng, n);
    auto b2 = b1;
    const cdouble alpha{0.3, -1.2};
    scalar::caxpy(alpha, a.data(), b1.data(), n);
    avx2::caxpy(alpha, a.data(), b2.data(), n);
    for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(b1[k] - b2[k]) <= 1e-13 * (1 + std::abs(b1[k])));
    const cdouble s = scalar::cdot(a.data(), b1.data(), n);
    const cdouble v = avx2::cdot(a.data(), b1.data(), n);
    CHECK(std::abs(s - v) <= 1e-12 * (1 + std::abs(s)));
  }
}

TEST_CASE("kernel dispatch routes to both paths") {
  LevelGuard guard;
  std::mt19937_64 rng(5);
  const auto x = reals(rng, 33);
  const auto a = complexes(rng, 33);
  set_active_level(SimdLevel::scalar);
  const double d0 = dot(x, x);
  const cdouble c0 = cdot(a, a);
  set_active_level(SimdLevel::avx2);
  CHECK(dot(x, x) == doctest::Approx(d0).epsilon(1e-13));
  CHECK(std::abs(cdot(a, a) - c0) <= 1e-12 * std::abs(c0));
}
