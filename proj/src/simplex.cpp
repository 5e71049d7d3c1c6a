#include "bellscope/simplex.hpp"

#include <cmath>
#include <limits>
#include <span>

#include "bellscope/kernels/kernels.hpp"

namespace bellscope {

namespace {

struct ExactOps {
  static bool negative(const Rational& v) { return sgn(v) < 0; }
  static bool positive(const Rational& v) { return sgn(v) > 0; }
  static bool zero(const Rational& v) { return sgn(v) == 0; }

  // row -= factor * pivot_row, touching only the pivot row's nonzeros.
  static void eliminate(std::span<Rational> row, const Rational& factor, std::span<const Rational> pivot_row,
                        const std::vector<std::size_t>& nonzero) {
    Rational tmp;
    for (std::size_t j : nonzero) {
      tmp = factor * pivot_row[j];
      row[j] -= tmp;
    }
  }
};

struct FloatOps {
  double tol;
  bool negative(double v) const { return v < -tol; }
  bool positive(double v) const { return v > tol; }
  bool zero(double v) const { return std::abs(v) <= tol; }

  static void eliminate(std::span<double> row, double factor, std::span<const double> pivot_row,
                        const std::vector<std::size_t>&) {
    kernels::axpy(-factor, pivot_row, row);
  }
};

template <class Field, class Ops>
FeasibilityResult<Field> phase_one(const LinearSystem<Field>& sys, const Ops& ops) {
  const std::size_t m = sys.rows;
  const std::size_t n = sys.cols;
  const std::size_t width = n + m + 1;  // originals, artificials, rhs
  const std::size_t rhs = n + m;

  // Rows 0..m-1 are constraints; row m is the reduced-cost row of
  // minimize sum(artificials).
  std::vector<Field> t((m + 1) * width, Field(0));
  auto row = [&](std::size_t i) { return std::span<Field>(t.data() + i * width, width); };
  std::vector<int> sign(m, 1);
  std::vector<std::size_t> basis(m);

  for (std::size_t i = 0; i < m; ++i) {
    if (ops.negative(sys.b[i])) sign[i] = -1;
    auto r = row(i);
    for (std::size_t j = 0; j < n; ++j) r[j] = sign[i] < 0 ? Field(-sys.at(i, j)) : sys.at(i, j);
    r[n + i] = Field(1);
    r[rhs] = sign[i] < 0 ? Field(-sys.b[i]) : sys.b[i];
    basis[i] = n + i;
  }
  {
    auto obj = row(m);
    for (std::size_t i = 0; i < m; ++i) {
      auto r = row(i);
      for (std::size_t j = 0; j < n; ++j) obj[j] -= r[j];
      obj[rhs] -= r[rhs];  // holds -w
    }
  }

  FeasibilityResult<Field> result;
  std::vector<std::size_t> nonzero;
  nonzero.reserve(width);
  const std::size_t pivot_guard = 50 * (m + n + 10) * (m + 10);

  while (true) {
    auto obj = row(m);
    std::size_t enter = width;
    for (std::size_t j = 0; j < rhs; ++j) {
      if (ops.negative(obj[j])) {
        enter = j;
        break;
      }
    }
    if (enter == width) break;

    std::size_t leave = m;
    Field best_ratio(0);
    for (std::size_t i = 0; i < m; ++i) {
      const Field& coef = t[i * width + enter];
      if (!ops.positive(coef)) continue;
      Field ratio = t[i * width + rhs] / coef;
      if (leave == m || ratio < best_ratio || (!(best_ratio < ratio) && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave == m) {
      // Cannot happen: phase-I objective is bounded below by zero.
      throw Error(ErrorCode::internal, "unbounded phase-one simplex");
    }

    auto prow = row(leave);
    Field pivot = prow[enter];
    for (auto& v : prow) v /= pivot;
    nonzero.clear();
    for (std::size_t j = 0; j < width; ++j)
      if (!ops.zero(prow[j])) nonzero.push_back(j);
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave) continue;
      auto r = row(i);
      if (ops.zero(r[enter])) continue;
      Field factor = r[enter];
      ops.eliminate(r, factor, std::span<const Field>(prow.data(), width), nonzero);
      r[enter] = Field(0);
    }
    basis[leave] = enter;
    if (++result.pivots > pivot_guard) throw Error(ErrorCode::internal, "simplex pivot limit exceeded");
  }

  auto obj = row(m);
  Field infeasibility = -obj[rhs];
  if (ops.positive(infeasibility)) {
    result.feasible = false;
    result.farkas.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      Field y = Field(1) - obj[n + i];
      result.farkas[i] = sign[i] < 0 ? Field(-y) : y;
    }
    return result;
  }

  result.feasible = true;
  result.x.assign(n, Field(0));
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n) {
      Field v = t[i * width + rhs];
      if (ops.negative(v)) throw Error(ErrorCode::internal, "negative basic value");
      if (!ops.zero(v)) result.x[basis[i]] = v;
    }
  }
  return result;
}

}  // namespace

FeasibilityResult<Rational> solve_feasibility(const LinearSystem<Rational>& system) {
  if (system.a.size() != system.rows * system.cols || system.b.size() != system.rows)
    throw Error(ErrorCode::dimension_mismatch, "malformed linear system");
  return phase_one(system, ExactOps{});
}

FeasibilityResult<double> solve_feasibility(const LinearSystem<double>& system, double tol) {
  if (system.a.size() != system.rows * system.cols || system.b.size() != system.rows)
    throw Error(ErrorCode::dimension_mismatch, "malformed linear system");
  return phase_one(system, FloatOps{tol});
}

}  // namespace bellscope
