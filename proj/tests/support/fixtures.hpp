#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "bellscope/classical_rep.hpp"
#include "bellscope/scenario.hpp"

namespace fixtures {

using namespace bellscope;

inline Scalar q(long num, long den = 1) { return Scalar::exact(num, den); }

inline CorrelationVector two(const Scalar& p1, const Scalar& p2, const Scalar& p12) {
  return CorrelationVector(Scenario::two_events(), {p1, p2, p12});
}

inline CorrelationVector two(double p1, double p2, double p12) {
  return two(Scalar(p1), Scalar(p2), Scalar(p12));
}

inline CorrelationVector vec(const std::string& text, const Scenario& s = Scenario::two_events(),
                             ArithmeticMode mode = ArithmeticMode::exact) {
  return CorrelationVector::parse(text, s, mode);
}

/// The sixteen atoms A1 A2 a1 a2 (bit 3 = A1 ... bit 0 = a2) of a signaling
/// representation of (2/3,2/3;1/5); everything not listed has weight zero.
inline ConditionalRep signaling_rep() {
  auto weight = [](bool A1, bool A2, bool a1, bool a2) -> Scalar {
    if (A1 && A2 && a1 && a2) return q(1, 25);
    if (!A1 && !A2 && a1 && a2) return q(4, 25);
    if (!A1 && A2 && !a1 && a2) return q(9, 25);
    if (A1 && !A2 && a1 && !a2) return q(9, 25);
    if (!A1 && !A2 && !a1 && a2) return q(1, 25);
    if (!A1 && !A2 && a1 && !a2) return q(1, 25);
    return q(0);
  };
  std::vector<std::string> labels;
  std::vector<Scalar> weights;
  for (int bits = 0; bits < 16; ++bits) {
    const bool A1 = bits & 8, A2 = bits & 4, a1 = bits & 2, a2 = bits & 1;
    labels.push_back(std::string(A1 ? "A1" : "~A1") + (A2 ? "A2" : "~A2") + (a1 ? "a1" : "~a1") + (a2 ? "a2" : "~a2"));
    weights.push_back(weight(A1, A2, a1, a2));
  }
  FiniteProbSpace space(labels, weights);
  auto bit = [&](int mask) { return space.where([mask](std::size_t k) { return (k & static_cast<std::size_t>(mask)) != 0; }); };
  return ConditionalRep{space, {bit(8), bit(4)}, {bit(2), bit(1)}, std::nullopt};
}

/// Indeterministic independence vectors reproducing (2/5,2/5;1/5), in
/// classical-vertex order 00, 01, 10, 11.
inline std::vector<CorrelationVector> two_fifths_components() {
  const double r5 = std::sqrt(5.0);
  return {two(0.5, 0.5, 0.25), two((3 - r5) / 8, (3 - r5) / 8, (7 - 3 * r5) / 32),
          two((3 + r5) / 8, (3 + r5) / 8, (7 + 3 * r5) / 32), two(0.25, 0.25, 1.0 / 16)};
}

/// n = 2 vertex coefficients solved by hand: lambda_11 = p12,
/// lambda_10 = p1 - p12, lambda_01 = p2 - p12, lambda_00 = 1 - p1 - p2 + p12.
inline std::vector<Rational> two_event_lambda(const Rational& p1, const Rational& p2, const Rational& p12) {
  return {1 - p1 - p2 + p12, p2 - p12, p1 - p12, p12};
}

inline bool two_event_classical(const Rational& p1, const Rational& p2, const Rational& p12) {
  for (const auto& l : two_event_lambda(p1, p2, p12))
    if (l < 0) return false;
  return true;
}

/// Hull of (0,0;0), (1,0;0), (0,1;0), (1,1;0), (1,1;1).
inline bool two_event_quantum(const Rational& p1, const Rational& p2, const Rational& p12) {
  return p12 >= 0 && p12 <= p1 && p12 <= p2 && p1 <= 1 && p2 <= 1;
}

/// Clauser-Horne system written out longhand: 0 <= p_ij <= p_i, p_j;
/// p_i + p_j - p_ij <= 1; -1 <= CH <= 0 for the four index choices.
inline bool clauser_horne_classical(const std::vector<Rational>& x) {
  // x = p1 p2 p3 p4 p13 p14 p23 p24
  auto p = [&](int i) { return x[static_cast<std::size_t>(i - 1)]; };
  auto pp = [&](int i, int j) {
    if (i > j) std::swap(i, j);
    const int slot = (i - 1) * 2 + (j - 3);
    return x[static_cast<std::size_t>(4 + slot)];
  };
  for (int i : {1, 2})
    for (int j : {3, 4}) {
      if (pp(i, j) < 0 || pp(i, j) > p(i) || pp(i, j) > p(j) || p(i) + p(j) - pp(i, j) > 1) return false;
      const int i2 = 3 - i, j2 = 7 - j;
      const Rational ch = pp(i, j) + pp(i, j2) + pp(i2, j) - pp(i2, j2) - p(i) - p(j);
      if (ch < -1 || ch > 0) return false;
    }
  return true;
}

}  // namespace fixtures
