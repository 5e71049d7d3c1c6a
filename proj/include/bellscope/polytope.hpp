#pragma once

// Membership in the hulls c(n,S), q(n,S), u(n,S) of the classical, quantum and
// general vertex families, the facet systems of the two-event and
// Clauser-Horne scenarios, and the product expansion of independence vectors.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bellscope/scenario.hpp"

namespace bellscope {

/// Linear functional f with f(v) <= bound on every vertex of the family and
/// f(p) = value > bound.
struct Certificate {
  std::string description;
  std::optional<std::string> facet_id;  // set when a named facet is violated
  std::vector<Scalar> coefficients;     // over (singles, pairs)
  Scalar bound;
  Scalar value;
};

struct WeightedVertex {
  std::size_t index;  // position in enumerate_vertices(s, family)
  VertexVector vertex;
  Scalar weight;
};

struct MembershipResult {
  Family family = Family::classical;
  bool inside = false;
  std::vector<WeightedVertex> coefficients;  // nonzero weights, present iff inside
  std::optional<Certificate> certificate;    // present iff outside
  std::size_t pivots = 0;

  /// Weights indexed by the family enumeration order (zeros filled in).
  std::vector<Scalar> dense_weights(std::size_t family_size, ArithmeticMode mode) const;
};

MembershipResult membership(const CorrelationVector& p, Family family);

/// Σ weight_v · v over the given vertices.
CorrelationVector reconstruct(const Scenario& s, const std::vector<WeightedVertex>& terms, ArithmeticMode mode);

struct FacetEntry {
  std::string id;
  std::vector<Scalar> coefficients;  // the linear expression over coordinates
  Scalar value;
  std::optional<Scalar> lower;
  std::optional<Scalar> upper;
  bool satisfied = true;
};

struct FacetReport {
  std::vector<FacetEntry> entries;
  bool all_satisfied() const;
  const FacetEntry* first_violated() const;
};

bool facets_supported(const Scenario& s);

/// Facet inequalities for n = 2, S = {(1,2)} and for the Clauser-Horne
/// scenario. Float vectors are judged with absolute tolerance `tol`.
FacetReport evaluate_facets(const CorrelationVector& p, double tol = 1e-9);

/// The violated entry as a `<=` certificate.
Certificate facet_certificate(const FacetEntry& entry, const CorrelationVector& p);

/// p_13 + p_23 + p_14 - p_24 - p_1 - p_3 for a Clauser-Horne scenario vector.
Scalar clauser_horne_expression(const CorrelationVector& p, int i, int j);

struct EquivalenceReport {
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::size_t inside = 0;
  std::vector<CorrelationVector> counterexamples;
};

/// Draws `samples` exact vectors uniformly from a rational grid in
/// [0,1]^(n+|S|) (plus any `extra` vectors) and checks that the LP verdict for
/// c(n,S) equals the facet verdict.
EquivalenceReport facet_lp_equivalence_check(const Scenario& s, std::size_t samples, std::uint64_t seed,
                                             std::span<const CorrelationVector> extra = {});

/// lambda_eps = prod_i (eps_i ? p_i : 1 - p_i), in classical-vertex order.
std::vector<Scalar> product_expansion(const CorrelationVector& p, double tol = 1e-9);

}  // namespace bellscope
