#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "bellscope/complex_matrix.hpp"
#include "bellscope/sampling.hpp"
#include "bellscope/scenario.hpp"

namespace bellscope {

inline constexpr double kQuantumTolerance = 1e-10;
inline constexpr double kMeetThreshold = 1e-8;
inline constexpr double kEprCrossCheckTolerance = 1e-12;
inline constexpr double kQuantumScreeningTolerance = 1e-9;

class DensityOperator {
 public:
  /// Validates Hermiticity, positivity and unit trace.
  static DensityOperator make(ComplexMatrix rho);
  static DensityOperator pure(std::span<const cdouble> psi);

  const ComplexMatrix& matrix() const { return rho_; }
  std::size_t dim() const { return rho_.dim(); }

 private:
  explicit DensityOperator(ComplexMatrix rho) : rho_(std::move(rho)) {}
  ComplexMatrix rho_;
};

class ProjectionEvent {
 public:
  static ProjectionEvent make(ComplexMatrix p);

  const ComplexMatrix& matrix() const { return p_; }
  std::size_t dim() const { return p_.dim(); }

 private:
  explicit ProjectionEvent(ComplexMatrix p) : p_(std::move(p)) {}
  ComplexMatrix p_;
};

/// Tr(rho P), clipped to [0,1].
double trace_prob(const DensityOperator& rho, const ProjectionEvent& p);
/// Projection onto the intersection of the two ranges.
ProjectionEvent meet_projection(const ProjectionEvent& p, const ProjectionEvent& q);
bool commute(const ComplexMatrix& a, const ComplexMatrix& b, double tol = kQuantumTolerance);

DensityOperator singlet_state();

using Direction = std::array<double, 3>;
enum class Wing { left, right };

/// a.sigma on a single qubit.
ComplexMatrix spin_observable(const Direction& a);
ProjectionEvent spin_projection(const Direction& a, Wing wing);
double angle_between(const Direction& a, const Direction& b);

struct EprResult {
  std::array<Direction, 4> directions;
  CorrelationVector vector;
  std::array<double, 4> angles;           // pair order of the CH scenario
  std::array<double, 4> closed_form;
  std::array<double, 4> trace_form;
  std::array<double, 4> singles_trace;
  double max_discrepancy = 0.0;
  double ch_closed_form = 0.0;
  double ch_trace = 0.0;
};

/// Directions a1, a2 (left) and b3, b4 (right).
EprResult epr_correlation_vector(const Direction& a1, const Direction& a2, const Direction& b3, const Direction& b4);
std::array<Direction, 4> canonical_epr_directions();
/// p13 + p23 + p14 - p24 - p1 - p3 for a CH-scenario vector given in doubles.
double ch_value(const std::array<double, 4>& pairs, double p1, double p3);

struct QuantumPairCheck {
  IndexPair pair;
  std::vector<double> residuals;  // per cell
  double max_residual = 0.0;
  bool screened = false;
  bool commuting = false;
};

struct QuantumCommonCauseReport {
  std::vector<double> weights;                 // c_k
  std::vector<std::vector<double>> cell_singles;  // p_i^k
  std::vector<QuantumPairCheck> pairs;
  bool screening_pass = false;
  bool commuting = false;
  CorrelationVector direct;
  CorrelationVector reconstructed;
  double max_gap = 0.0;
  double tolerance = kQuantumScreeningTolerance;
};

QuantumCommonCauseReport quantum_common_cause_check(const DensityOperator& rho, std::span<const ProjectionEvent> events,
                                                    const Scenario& s, std::span<const ProjectionEvent> partition);

struct BellOperatorSet {
  ComplexMatrix a1, a2, b1, b2;
};

/// (1/2)(A1(B1+B2) + A2(B1-B2)) after validating norms and commutation.
ComplexMatrix bell_operator(const BellOperatorSet& ops);
double bell_operator_value(const DensityOperator& rho, const BellOperatorSet& ops);
/// A_i = a_i.sigma (x) 1, B_j = 1 (x) b_j.sigma.
BellOperatorSet spin_bell_operators(const Direction& a1, const Direction& a2, const Direction& b1, const Direction& b2);
std::array<Direction, 4> canonical_chsh_directions();

std::vector<cdouble> random_state_vector(Sampler& rng, std::size_t dim);
DensityOperator random_pure_state(Sampler& rng, std::size_t dim);
/// Two-qubit product of independent pure states.
DensityOperator random_product_state(Sampler& rng);
/// Random Hermitian matrix scaled to spectral norm 1.
ComplexMatrix random_hermitian_contraction(Sampler& rng, std::size_t dim);

}  // namespace bellscope
