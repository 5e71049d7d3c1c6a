#pragma once

// Scenarios (n, S), correlation vectors in R(n, S) and the three 0/1 vertex
// families. Indices are 0-based here; the JSON and text formats are 1-based.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bellscope/scalar.hpp"

namespace bellscope {

/// Vertex enumeration is refused once n + |S| exceeds this many bits.
inline constexpr int kEnumerationCapBits = 20;

struct IndexPair {
  int first;
  int second;
  friend bool operator==(const IndexPair&, const IndexPair&) = default;
};

class Scenario {
 public:
  /// Validates n >= 1 and 1-based pairs; (j, i) is normalized to (i, j).
  static Scenario make(int n, const std::vector<std::pair<int, int>>& one_based_pairs);
  static Scenario two_events();
  static Scenario clauser_horne();

  int n() const { return n_; }
  const std::vector<IndexPair>& pairs() const { return pairs_; }
  std::size_t num_pairs() const { return pairs_.size(); }
  std::size_t dimension() const { return static_cast<std::size_t>(n_) + pairs_.size(); }

  std::optional<std::size_t> pair_slot(int i, int j) const;

  bool is_two_events() const;
  /// n = 4 with S = {(1,3),(1,4),(2,3),(2,4)} in any order.
  bool is_clauser_horne() const;

  /// "i,j" with 1-based indices, as used for JSON keys.
  std::string pair_key(std::size_t slot) const;
  /// Coordinate name: "p1", "p13" (or "p1,13" once n >= 10).
  std::string coordinate_name(std::size_t coordinate) const;

  friend bool operator==(const Scenario&, const Scenario&) = default;

 private:
  Scenario(int n, std::vector<IndexPair> pairs) : n_(n), pairs_(std::move(pairs)) {}

  int n_ = 0;
  std::vector<IndexPair> pairs_;
};

/// (p_1..p_n; p_ij for (i,j) in S). All entries share one arithmetic mode.
class CorrelationVector {
 public:
  CorrelationVector(Scenario scenario, std::vector<Scalar> entries);

  /// Parses "p1,...,pn;p12,..." with entries as rationals or decimals.
  static CorrelationVector parse(std::string_view text, const Scenario& scenario,
                                 ArithmeticMode mode = ArithmeticMode::exact);

  const Scenario& scenario() const { return scenario_; }
  ArithmeticMode mode() const { return mode_; }
  std::size_t dimension() const { return entries_.size(); }

  const Scalar& single(int i) const { return entries_[static_cast<std::size_t>(i)]; }
  const Scalar& pair(std::size_t slot) const { return entries_[static_cast<std::size_t>(scenario_.n()) + slot]; }
  const Scalar& operator[](std::size_t coordinate) const { return entries_[coordinate]; }
  const std::vector<Scalar>& entries() const { return entries_; }

  CorrelationVector in_mode(ArithmeticMode mode) const;
  std::string to_string() const;

  friend bool operator==(const CorrelationVector& a, const CorrelationVector& b) {
    return a.scenario_ == b.scenario_ && a.entries_ == b.entries_;
  }

 private:
  Scenario scenario_;
  std::vector<Scalar> entries_;
  ArithmeticMode mode_;
};

enum class VertexKind { classical, quantum_only, general_only };
enum class Family { classical, quantum, general };

std::string_view to_string(VertexKind kind);
std::string_view to_string(Family family);
Family parse_family(std::string_view text);

/// A 0/1 vector of R(n, S); `kind` is derived from the bits on construction.
class VertexVector {
 public:
  VertexVector(Scenario scenario, std::vector<std::uint8_t> bits);

  const Scenario& scenario() const { return scenario_; }
  const std::vector<std::uint8_t>& bits() const { return bits_; }
  std::uint8_t single(int i) const { return bits_[static_cast<std::size_t>(i)]; }
  std::uint8_t pair(std::size_t slot) const { return bits_[static_cast<std::size_t>(scenario_.n()) + slot]; }
  VertexKind kind() const { return kind_; }

  CorrelationVector to_correlation(ArithmeticMode mode = ArithmeticMode::exact) const;
  std::string to_string() const;

 private:
  Scenario scenario_;
  std::vector<std::uint8_t> bits_;
  VertexKind kind_;
};

VertexKind classify_vertex(const VertexVector& v);
/// Throws non_binary if some entry is not exactly 0 or 1.
VertexKind classify_vertex(const CorrelationVector& p);

/// 2^n vectors, epsilon read as a binary integer with index 1 most significant.
std::vector<VertexVector> enumerate_classical_vertices(const Scenario& s);
/// Every 0/1 vector with u_ij <= eps_i eps_j, in the same counter order as
/// enumerate_all_vertices.
std::vector<VertexVector> enumerate_quantum_vertices(const Scenario& s);
/// All 2^(n+|S|) 0/1 vectors, coordinate 1 most significant.
std::vector<VertexVector> enumerate_all_vertices(const Scenario& s);
std::vector<VertexVector> enumerate_vertices(const Scenario& s, Family family);

/// Classical vertex for epsilon given as an integer in the enumeration order.
VertexVector classical_vertex(const Scenario& s, std::uint64_t epsilon);
/// "01"-style label of epsilon, index 1 first.
std::string epsilon_label(int n, std::uint64_t epsilon);
inline int epsilon_bit(int n, std::uint64_t epsilon, int i) {
  return static_cast<int>((epsilon >> (n - 1 - i)) & 1U);
}

/// |p_ij - p_i p_j| <= tol on every pair; tol is ignored in exact mode.
bool is_independence_vector(const CorrelationVector& p, double tol = 0.0);

/// Independence vector (q_1..q_n; q_i q_j) built from its singles.
CorrelationVector independence_vector(const Scenario& s, const std::vector<Scalar>& singles);

}  // namespace bellscope
