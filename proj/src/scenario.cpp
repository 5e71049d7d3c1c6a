#include "bellscope/scenario.hpp"

#include <algorithm>

namespace bellscope {

Scenario Scenario::make(int n, const std::vector<std::pair<int, int>>& one_based_pairs) {
  if (n < 1) throw Error(ErrorCode::invalid_scenario, "n must be at least 1");
  std::vector<IndexPair> pairs;
  pairs.reserve(one_based_pairs.size());
  for (auto [a, b] : one_based_pairs) {
    if (a == b)
      throw Error(ErrorCode::invalid_pair, "pair (" + std::to_string(a) + "," + std::to_string(b) + ") has i = j");
    if (a < 1 || b < 1 || a > n || b > n)
      throw Error(ErrorCode::invalid_pair, "pair (" + std::to_string(a) + "," + std::to_string(b) +
                                               ") out of range 1.." + std::to_string(n));
    IndexPair p{std::min(a, b) - 1, std::max(a, b) - 1};
    if (std::find(pairs.begin(), pairs.end(), p) != pairs.end())
      throw Error(ErrorCode::invalid_pair, "duplicate pair (" + std::to_string(p.first + 1) + "," +
                                               std::to_string(p.second + 1) + ")");
    pairs.push_back(p);
  }
  return Scenario(n, std::move(pairs));
}

Scenario Scenario::two_events() { return make(2, {{1, 2}}); }

Scenario Scenario::clauser_horne() { return make(4, {{1, 3}, {1, 4}, {2, 3}, {2, 4}}); }

std::optional<std::size_t> Scenario::pair_slot(int i, int j) const {
  IndexPair key{std::min(i, j), std::max(i, j)};
  auto it = std::find(pairs_.begin(), pairs_.end(), key);
  if (it == pairs_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - pairs_.begin());
}

bool Scenario::is_two_events() const { return n_ == 2 && pairs_.size() == 1; }

bool Scenario::is_clauser_horne() const {
  if (n_ != 4 || pairs_.size() != 4) return false;
  for (int i : {0, 1})
    for (int j : {2, 3})
      if (!pair_slot(i, j)) return false;
  return true;
}

std::string Scenario::pair_key(std::size_t slot) const {
  const auto& p = pairs_.at(slot);
  return std::to_string(p.first + 1) + "," + std::to_string(p.second + 1);
}

std::string Scenario::coordinate_name(std::size_t coordinate) const {
  if (coordinate < static_cast<std::size_t>(n_)) return "p" + std::to_string(coordinate + 1);
  const auto& pr = pairs_.at(coordinate - static_cast<std::size_t>(n_));
  if (n_ < 10) return "p" + std::to_string(pr.first + 1) + std::to_string(pr.second + 1);
  return "p" + pair_key(coordinate - static_cast<std::size_t>(n_));
}

CorrelationVector::CorrelationVector(Scenario scenario, std::vector<Scalar> entries)
    : scenario_(std::move(scenario)), entries_(std::move(entries)), mode_(ArithmeticMode::exact) {
  if (entries_.size() != scenario_.dimension())
    throw Error(ErrorCode::invalid_vector, "expected " + std::to_string(scenario_.dimension()) + " entries, got " +
                                               std::to_string(entries_.size()));
  mode_ = entries_.front().mode();
  require_mode(entries_, mode_);
  const Scalar zero = Scalar::zero(mode_);
  const Scalar one = Scalar::one(mode_);
  for (std::size_t c = 0; c < entries_.size(); ++c) {
    if (entries_[c] < zero || entries_[c] > one)
      throw Error(ErrorCode::invalid_vector,
                  scenario_.coordinate_name(c) + " = " + entries_[c].to_string() + " is outside [0,1]");
  }
}

CorrelationVector CorrelationVector::parse(std::string_view text, const Scenario& scenario, ArithmeticMode mode) {
  std::vector<Scalar> entries;
  auto split = [&](std::string_view part) {
    while (!part.empty()) {
      auto comma = part.find(',');
      auto token = part.substr(0, comma);
      if (!token.empty()) entries.push_back(Scalar::parse(token, mode));
      if (comma == std::string_view::npos) break;
      part.remove_prefix(comma + 1);
    }
  };
  auto semi = text.find(';');
  split(text.substr(0, semi));
  if (entries.size() != static_cast<std::size_t>(scenario.n()))
    throw Error(ErrorCode::invalid_vector, "expected " + std::to_string(scenario.n()) + " singles in '" +
                                               std::string(text) + "'");
  if (semi != std::string_view::npos) split(text.substr(semi + 1));
  return CorrelationVector(scenario, std::move(entries));
}

CorrelationVector CorrelationVector::in_mode(ArithmeticMode mode) const {
  std::vector<Scalar> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.in_mode(mode));
  return CorrelationVector(scenario_, std::move(out));
}

std::string CorrelationVector::to_string() const {
  std::string s = "(";
  for (std::size_t c = 0; c < entries_.size(); ++c) {
    if (c > 0) s += (c == static_cast<std::size_t>(scenario_.n()) ? ";" : ",");
    s += entries_[c].to_string();
  }
  if (scenario_.num_pairs() == 0) s += ";";
  return s + ")";
}

std::string_view to_string(VertexKind kind) {
  switch (kind) {
    case VertexKind::classical: return "classical";
    case VertexKind::quantum_only: return "quantum-only";
    case VertexKind::general_only: return "general-only";
  }
  return "?";
}

std::string_view to_string(Family family) {
  switch (family) {
    case Family::classical: return "classical";
    case Family::quantum: return "quantum";
    case Family::general: return "general";
  }
  return "?";
}

Family parse_family(std::string_view text) {
  if (text == "classical") return Family::classical;
  if (text == "quantum") return Family::quantum;
  if (text == "general") return Family::general;
  throw Error(ErrorCode::parse_error, "unknown vertex family '" + std::string(text) + "'");
}

namespace {

VertexKind kind_of(const Scenario& s, const std::vector<std::uint8_t>& bits) {
  bool strict = false;
  for (std::size_t k = 0; k < s.num_pairs(); ++k) {
    const auto& p = s.pairs()[k];
    int product = bits[static_cast<std::size_t>(p.first)] & bits[static_cast<std::size_t>(p.second)];
    int u = bits[static_cast<std::size_t>(s.n()) + k];
    if (u > product) return VertexKind::general_only;
    if (u < product) strict = true;
  }
  return strict ? VertexKind::quantum_only : VertexKind::classical;
}

void check_cap(const Scenario& s) {
  if (s.dimension() > static_cast<std::size_t>(kEnumerationCapBits))
    throw Error(ErrorCode::cap_exceeded, "n + |S| = " + std::to_string(s.dimension()) + " exceeds the cap of " +
                                             std::to_string(kEnumerationCapBits));
}

}  // namespace

VertexVector::VertexVector(Scenario scenario, std::vector<std::uint8_t> bits)
    : scenario_(std::move(scenario)), bits_(std::move(bits)), kind_(VertexKind::classical) {
  if (bits_.size() != scenario_.dimension())
    throw Error(ErrorCode::invalid_vector, "vertex has wrong dimension");
  for (auto b : bits_)
    if (b > 1) throw Error(ErrorCode::non_binary, "vertex entries must be 0 or 1");
  kind_ = kind_of(scenario_, bits_);
}

CorrelationVector VertexVector::to_correlation(ArithmeticMode mode) const {
  std::vector<Scalar> entries;
  entries.reserve(bits_.size());
  for (auto b : bits_) entries.push_back(b ? Scalar::one(mode) : Scalar::zero(mode));
  return CorrelationVector(scenario_, std::move(entries));
}

std::string VertexVector::to_string() const { return to_correlation().to_string(); }

VertexKind classify_vertex(const VertexVector& v) { return v.kind(); }

VertexKind classify_vertex(const CorrelationVector& p) {
  std::vector<std::uint8_t> bits;
  for (const auto& e : p.entries()) {
    if (e.is_zero()) bits.push_back(0);
    else if (e.is_one()) bits.push_back(1);
    else throw Error(ErrorCode::non_binary, "entry " + e.to_string() + " is not 0 or 1");
  }
  return VertexVector(p.scenario(), std::move(bits)).kind();
}

VertexVector classical_vertex(const Scenario& s, std::uint64_t epsilon) {
  const int n = s.n();
  std::vector<std::uint8_t> bits(s.dimension());
  for (int i = 0; i < n; ++i) bits[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(epsilon_bit(n, epsilon, i));
  for (std::size_t k = 0; k < s.num_pairs(); ++k) {
    const auto& p = s.pairs()[k];
    bits[static_cast<std::size_t>(n) + k] = bits[static_cast<std::size_t>(p.first)] & bits[static_cast<std::size_t>(p.second)];
  }
  return VertexVector(s, std::move(bits));
}

std::string epsilon_label(int n, std::uint64_t epsilon) {
  std::string label;
  for (int i = 0; i < n; ++i) label += epsilon_bit(n, epsilon, i) ? '1' : '0';
  return label;
}

std::vector<VertexVector> enumerate_classical_vertices(const Scenario& s) {
  check_cap(s);
  std::vector<VertexVector> out;
  const std::uint64_t count = std::uint64_t{1} << s.n();
  out.reserve(count);
  for (std::uint64_t eps = 0; eps < count; ++eps) out.push_back(classical_vertex(s, eps));
  return out;
}

std::vector<VertexVector> enumerate_quantum_vertices(const Scenario& s) {
  check_cap(s);
  // Walk epsilon in counter order; for each, walk the pair bits allowed by it.
  // Singles are the high bits of the full counter, so this matches the order
  // of enumerate_all_vertices restricted to quantum vertices.
  const int n = s.n();
  const std::size_t m = s.num_pairs();
  std::vector<VertexVector> out;
  for (std::uint64_t eps = 0; eps < (std::uint64_t{1} << n); ++eps) {
    std::vector<std::uint8_t> base(s.dimension(), 0);
    for (int i = 0; i < n; ++i) base[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(epsilon_bit(n, eps, i));
    for (std::uint64_t pb = 0; pb < (std::uint64_t{1} << m); ++pb) {
      bool allowed = true;
      auto bits = base;
      for (std::size_t k = 0; k < m; ++k) {
        auto u = static_cast<std::uint8_t>((pb >> (m - 1 - k)) & 1U);
        const auto& p = s.pairs()[k];
        if (u > (bits[static_cast<std::size_t>(p.first)] & bits[static_cast<std::size_t>(p.second)])) {
          allowed = false;
          break;
        }
        bits[static_cast<std::size_t>(n) + k] = u;
      }
      if (allowed) out.emplace_back(s, std::move(bits));
    }
  }
  return out;
}

std::vector<VertexVector> enumerate_all_vertices(const Scenario& s) {
  check_cap(s);
  const std::size_t d = s.dimension();
  const std::uint64_t count = std::uint64_t{1} << d;
  std::vector<VertexVector> out;
  out.reserve(count);
  for (std::uint64_t code = 0; code < count; ++code) {
    std::vector<std::uint8_t> bits(d);
    for (std::size_t c = 0; c < d; ++c) bits[c] = static_cast<std::uint8_t>((code >> (d - 1 - c)) & 1U);
    out.emplace_back(s, std::move(bits));
  }
  return out;
}

std::vector<VertexVector> enumerate_vertices(const Scenario& s, Family family) {
  switch (family) {
    case Family::classical: return enumerate_classical_vertices(s);
    case Family::quantum: return enumerate_quantum_vertices(s);
    case Family::general: return enumerate_all_vertices(s);
  }
  return {};
}

bool is_independence_vector(const CorrelationVector& p, double tol) {
  const auto& s = p.scenario();
  for (std::size_t k = 0; k < s.num_pairs(); ++k) {
    const auto& pr = s.pairs()[k];
    Scalar product = p.single(pr.first) * p.single(pr.second);
    if (!approx_equal(p.pair(k), product, tol)) return false;
  }
  return true;
}

CorrelationVector independence_vector(const Scenario& s, const std::vector<Scalar>& singles) {
  if (singles.size() != static_cast<std::size_t>(s.n()))
    throw Error(ErrorCode::invalid_vector, "independence vector needs n singles");
  std::vector<Scalar> entries = singles;
  for (const auto& pr : s.pairs())
    entries.push_back(singles[static_cast<std::size_t>(pr.first)] * singles[static_cast<std::size_t>(pr.second)]);
  return CorrelationVector(s, std::move(entries));
}

}  // namespace bellscope
