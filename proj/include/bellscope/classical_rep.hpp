#pragma once

// Explicit finite probability spaces witnessing Kolmogorovian representations
// (p_i = p(A_i), p_ij = p(A_i & A_j)) and conditional ones
// (p_i = p(A_i | a_i), p_ij = p(A_i & A_j | a_i & a_j)).

#include <optional>
#include <string>
#include <vector>

#include "bellscope/probability_space.hpp"
#include "bellscope/scenario.hpp"

namespace bellscope {

/// Largest n accepted by build_conditional_rep (the LP has 4^n unknowns).
inline constexpr int kConditionalCap = 6;

/// Atoms "eps=01..." weighted by the classical-vertex coefficients (zero
/// weights dropped), events A_i = {eps : eps_i = 1}. Verifies that the space
/// reproduces p.
FiniteProbSpace build_kolmogorov_rep(const CorrelationVector& p, const std::vector<Scalar>& lambda);

struct ConditionalRep {
  FiniteProbSpace space;
  std::vector<Event> outcomes;  // A_1..A_n
  std::vector<Event> settings;  // a_1..a_n
  /// Per-setting probability used by the builder; empty for hand-made reps.
  std::optional<Scalar> setting_probability;
};

/// False iff some pair has (p_i = 0 or p_j = 0) with p_ij != 0, or
/// p_i = p_j = 1 with p_ij != 1.
bool check_admissibility(const CorrelationVector& p);

struct ConditionalRepOptions {
  /// Adds p(A_i | a_i & a_j) = p_i and p(A_j | a_i & a_j) = p_j for every pair.
  bool require_nonsignaling = false;
};

/// Settings are independent with a common probability s; outcomes are a
/// per-setting-vector distribution found by the simplex. s = 1/2 is tried
/// first and halved while the system is infeasible.
ConditionalRep build_conditional_rep(const CorrelationVector& p, ConditionalRepOptions options = {});

struct ConditionalCheck {
  std::string name;  // "p(A1|a1)" or "p(A1&A2|a1&a2)"
  Scalar expected;
  Scalar actual;
  bool agrees = false;
};

struct ConditionalVerification {
  std::vector<ConditionalCheck> checks;
  bool agrees = true;
};

ConditionalVerification verify_conditional_rep(const ConditionalRep& rep, const CorrelationVector& p,
                                               double tol = 1e-9);

struct SignalingCheck {
  IndexPair pair;
  Scalar first_given_own;    // p(A_i | a_i)
  Scalar first_given_both;   // p(A_i | a_i & a_j)
  Scalar second_given_own;   // p(A_j | a_j)
  Scalar second_given_both;  // p(A_j | a_i & a_j)
  bool nonsignaling = false;
};

struct NonsignalingReport {
  std::vector<SignalingCheck> pairs;
  bool nonsignaling() const;
};

NonsignalingReport check_nonsignaling(const ConditionalRep& rep, const Scenario& s, double tol = 1e-9);

/// The conditional numbers (p(A_i|a_i); p(A_i&A_j|a_i&a_j)) the rep realizes.
CorrelationVector represented_vector(const ConditionalRep& rep, const Scenario& s);

/// A Kolmogorovian space read conditionally with a_i = Omega.
ConditionalRep as_conditional(const FiniteProbSpace& space, int n);

/// Binary label of a bit vector, index 1 first.
std::string bits_label(std::uint64_t bits, int n);

}  // namespace bellscope
