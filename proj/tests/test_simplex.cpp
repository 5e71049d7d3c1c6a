#include <doctest.h>

#include <random>

#include "bellscope/kernels/kernels.hpp"
#include "bellscope/simplex.hpp"

using namespace bellscope;

namespace {

template <class F>
LinearSystem<F> system(std::size_t rows, std::size_t cols, std::initializer_list<double> a, std::initializer_list<double> b) {
  LinearSystem<F> s(rows, cols);
  std::size_t k = 0;
  for (double v : a) s.a[k++] = F(v);
  k = 0;
  for (double v : b) s.b[k++] = F(v);
  return s;
}

template <class F>
void check_solution(const LinearSystem<F>& s, const std::vector<F>& x) {
  REQUIRE(x.size() == s.cols);
  for (const auto& v : x) CHECK(v >= 0);
  for (std::size_t i = 0; i < s.rows; ++i) {
    F lhs = 0;
    for (std::size_t j = 0; j < s.cols; ++j) lhs += s.at(i, j) * x[j];
    if constexpr (std::is_same_v<F, double>)
      CHECK(lhs == doctest::Approx(s.b[i]).epsilon(1e-9));
    else
      CHECK(lhs == s.b[i]);
  }
}

template <class F>
void check_farkas(const LinearSystem<F>& s, const std::vector<F>& y) {
  REQUIRE(y.size() == s.rows);
  F yb = 0;
  for (std::size_t i = 0; i < s.rows; ++i) yb += y[i] * s.b[i];
  CHECK(yb > 0);
  for (std::size_t j = 0; j < s.cols; ++j) {
    F col = 0;
    for (std::size_t i = 0; i < s.rows; ++i) col += y[i] * s.at(i, j);
    if constexpr (std::is_same_v<F, double>)
      CHECK(col <= 1e-9);
    else
      CHECK(col <= 0);
  }
}

}  // namespace

TEST_CASE("simplex feasible system") {
  // x1 + x2 + x3 = 1, x1 - x3 = 1/2 (negative rhs rows are flipped internally)
  auto s = system<Rational>(2, 3, {1, 1, 1, 1, 0, -1}, {1, 0.5});
  auto r = solve_feasibility(s);
  CHECK(r.feasible);
  check_solution(s, r.x);
  auto sf = system<double>(2, 3, {1, 1, 1, 1, 0, -1}, {1, 0.5});
  auto rf = solve_feasibility(sf);
  CHECK(rf.feasible);
  check_solution(sf, rf.x);
}

TEST_CASE("simplex infeasible system yields a Farkas certificate") {
  // x1 + x2 = 1 and x1 + x2 = 2
  auto s = system<Rational>(2, 2, {1, 1, 1, 1}, {1, 2});
  auto r = solve_feasibility(s);
  CHECK_FALSE(r.feasible);
  check_farkas(s, r.farkas);
  auto neg = system<Rational>(1, 2, {1, 1}, {-1});
  auto rn = solve_feasibility(neg);
  CHECK_FALSE(rn.feasible);
  check_farkas(neg, rn.farkas);
}

TEST_CASE("property: random systems are solved or refuted with a certificate") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> coef(-3, 3), dim(1, 6);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t rows = static_cast<std::size_t>(dim(rng)), cols = static_cast<std::size_t>(dim(rng));
    LinearSystem<Rational> s(rows, cols);
    LinearSystem<double> sf(rows, cols);
    std::vector<int> a(rows * cols);
    for (std::size_t k = 0; k < rows * cols; ++k) {
      a[k] = coef(rng);
      s.a[k] = a[k];
      sf.a[k] = a[k];
    }
    if (trial % 2 == 0) {
      // planted nonnegative solution
      std::vector<int> x(cols);
      for (auto& v : x) v = std::uniform_int_distribution<int>(0, 2)(rng);
      for (std::size_t i = 0; i < rows; ++i) {
        int b = 0;
        for (std::size_t j = 0; j < cols; ++j) b += a[i * cols + j] * x[j];
        s.b[i] = b;
        sf.b[i] = b;
      }
    } else {
      for (std::size_t i = 0; i < rows; ++i) {
        const int b = coef(rng);
        s.b[i] = b;
        sf.b[i] = b;
      }
    }
    const auto r = solve_feasibility(s);
    if (trial % 2 == 0) CHECK(r.feasible);
    if (r.feasible)
      check_solution(s, r.x);
    else
      check_farkas(s, r.farkas);
    const auto rf = solve_feasibility(sf);
    CHECK(rf.feasible == r.feasible);
    if (rf.feasible) check_solution(sf, rf.x);
  }
}

TEST_CASE("simplex float path agrees across kernel levels") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto saved = kernels::active_level();
  for (int trial = 0; trial < 50; ++trial) {
    LinearSystem<double> s(5, 12);
    for (auto& v : s.a) v = u(rng);
    std::vector<double> x(12);
    for (auto& v : x) v = u(rng);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 12; ++j) s.b[i] += s.at(i, j) * x[j];
    kernels::set_active_level(kernels::SimdLevel::scalar);
    const auto a = solve_feasibility(s);
    kernels::set_active_level(kernels::SimdLevel::avx2);
    const auto b = solve_feasibility(s);
    CHECK(a.feasible);
    CHECK(b.feasible);
    CHECK(a.pivots == b.pivots);
    for (std::size_t j = 0; j < 12; ++j) CHECK(a.x[j] == doctest::Approx(b.x[j]).epsilon(1e-9));
  }
  kernels::set_active_level(saved);
}
