#pragma once

// Common-causal explanations of correlation vectors: screening-off checks,
// deterministic and indeterministic decompositions into independence
// vectors, the settings-by-cause atom construction that turns a
// non-signaling conditional representation into a property or propensity
// explanation, and the extraction of a Kolmogorovian space from a property.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bellscope/classical_rep.hpp"
#include "bellscope/polytope.hpp"

namespace bellscope {

/// Residual tolerance for float-mode screening; exact mode uses zero.
inline constexpr double kScreeningTolerance = 1e-9;

enum class CauseKind { deterministic, indeterministic };
std::string_view to_string(CauseKind kind);

struct CommonCauseDecomposition {
  std::vector<std::string> labels;
  std::vector<Scalar> weights;                 // c_k
  std::vector<CorrelationVector> components;   // p^k, independence vectors
  CauseKind kind = CauseKind::deterministic;
  /// True when the weights are the classical-vertex coefficients lambda_eps.
  bool same_coefficients_as_vertex_expansion = false;
  /// Vertex index eps matched to each component in that case.
  std::vector<std::uint64_t> epsilons;

  CorrelationVector combined() const;
};

struct ScreeningResidual {
  IndexPair pair;
  std::size_t cell;
  Scalar residual;
};

struct ScreeningReport {
  bool conditional_form = false;
  double tolerance = 0.0;
  std::vector<ScreeningResidual> factorization;
  std::vector<ScreeningResidual> no_conspiracy;  // conditional form only
  bool pass = false;
};

/// Unconditional form when `settings` is empty:
///   p(A_i & A_j | C_k) = p(A_i | C_k) p(A_j | C_k).
/// Conditional form otherwise:
///   p(A_i & A_j | a_i & a_j & C_k) = p(A_i | a_i & C_k) p(A_j | a_j & C_k),
///   p(a_i & a_j & C_k) = p(a_i & a_j) p(C_k).
ScreeningReport verify_screening(const FiniteProbSpace& space, std::span<const Event> outcomes, const Scenario& s,
                                 std::span<const Event> partition, std::span<const Event> settings = {});

/// Cells are the classical vertices with nonzero coefficient.
CommonCauseDecomposition decompose_deterministic(const CorrelationVector& p);

/// Expresses p over user-supplied independence vectors. With exactly 2^n
/// targets the vertex coefficients are tried first, matching the targets to
/// vertices in ascending and then descending epsilon order; otherwise, or if
/// they do not fit, the simplex picks the weights.
CommonCauseDecomposition decompose_indeterministic(const CorrelationVector& p,
                                                   const std::vector<CorrelationVector>& targets,
                                                   double tol = kScreeningTolerance);

struct CommonCauseExplanation {
  FiniteProbSpace space;
  std::vector<Event> outcomes;   // A_i
  std::vector<Event> settings;   // a_i
  std::vector<Event> partition;  // C_eps for lambda_eps > 0
  std::vector<std::string> cell_labels;
  std::vector<CorrelationVector> cell_vectors;  // p^eps
  bool deterministic = false;
  ScreeningReport screening;

  ConditionalRep as_rep() const { return ConditionalRep{space, outcomes, settings, std::nullopt}; }
};

/// Atoms (sigma, eps, omega): settings sigma weighted as in `rep`, cause eps
/// weighted lambda_eps, outcome bits independent with p(omega_i = 1) =
/// sigma_i * p^eps_i. Rejects signaling representations.
CommonCauseExplanation build_propensity_explanation(const CorrelationVector& p, const std::vector<Scalar>& lambda,
                                                    const std::vector<CorrelationVector>& components,
                                                    const ConditionalRep& rep);

/// Cell values p(A_i | a_i & C_k), row per cell.
std::vector<std::vector<Scalar>> cell_values(const ConditionalRep& rep, std::span<const Event> partition);

/// Space over the cells with events C_i = union of cells where p(A_i | a_i & C_k) = 1.
/// `declared`, when given, must match the computed cell values.
FiniteProbSpace extract_kolmogorov_from_property(const ConditionalRep& rep, std::span<const Event> partition,
                                                 const Scenario& s, std::span<const std::string> cell_labels = {},
                                                 const std::optional<std::vector<std::vector<Scalar>>>& declared = {});

}  // namespace bellscope
