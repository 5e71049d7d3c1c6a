#pragma once

// Phase-I simplex for the feasibility problem  A x = b, x >= 0.
//
// Exact over rationals, or over doubles with an absolute tolerance. Pivoting
// follows Bland's rule (smallest entering index, ties in the ratio test broken
// by smallest basic index), so the solver terminates and the basic solution it
// returns is a deterministic function of the column order.

#include <cstddef>
#include <vector>

#include "bellscope/scalar.hpp"

namespace bellscope {

template <class Field>
struct LinearSystem {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Field> a;  // row-major, rows * cols
  std::vector<Field> b;  // rows

  LinearSystem() = default;
  LinearSystem(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, Field(0)), b(r, Field(0)) {}

  Field& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const Field& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

template <class Field>
struct FeasibilityResult {
  bool feasible = false;
  /// A basic feasible solution (size cols) when feasible.
  std::vector<Field> x;
  /// Farkas multipliers y (size rows) when infeasible: y^T A <= 0 and y^T b > 0.
  std::vector<Field> farkas;
  std::size_t pivots = 0;
};

inline constexpr double kFloatPivotTolerance = 1e-9;

FeasibilityResult<Rational> solve_feasibility(const LinearSystem<Rational>& system);
FeasibilityResult<double> solve_feasibility(const LinearSystem<double>& system,
                                            double tol = kFloatPivotTolerance);

}  // namespace bellscope
