#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "bellscope/error.hpp"
#include "bellscope/scenario.hpp"
#include "support/fixtures.hpp"

using namespace bellscope;
using fixtures::q;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::internal;
}

std::vector<std::string> labels(const std::vector<VertexVector>& vs) {
  std::vector<std::string> out;
  for (const auto& v : vs) out.push_back(v.to_string());
  return out;
}

}  // namespace

TEST_CASE("make scenario") {
  const Scenario s = Scenario::make(2, {{1, 2}});
  CHECK(s.dimension() == 3);
  CHECK(s.is_two_events());
  const Scenario ch = Scenario::make(4, {{1, 3}, {1, 4}, {2, 3}, {2, 4}});
  CHECK(ch.is_clauser_horne());
  CHECK(ch == Scenario::clauser_horne());
  CHECK(Scenario::make(4, {{4, 2}, {3, 1}, {1, 4}, {3, 2}}).is_clauser_horne());
  CHECK(Scenario::make(3, {{3, 1}}).pairs().front() == IndexPair{0, 2});

  CHECK(code_of([] { Scenario::make(2, {{1, 1}}); }) == ErrorCode::invalid_pair);
  CHECK(code_of([] { Scenario::make(2, {{1, 3}}); }) == ErrorCode::invalid_pair);
  CHECK(code_of([] { Scenario::make(2, {{1, 2}, {2, 1}}); }) == ErrorCode::invalid_pair);
  CHECK(code_of([] { Scenario::make(0, {}); }) == ErrorCode::invalid_scenario);
}

TEST_CASE("correlation vectors validate their entries") {
  const Scenario s = Scenario::two_events();
  const auto p = CorrelationVector::parse("2/5,2/5;1/5", s);
  CHECK(p.single(0) == q(2, 5));
  CHECK(p.pair(0) == q(1, 5));
  CHECK(p.to_string() == "(2/5,2/5;1/5)");
  CHECK(code_of([&] { CorrelationVector::parse("2/5,2/5", s); }) == ErrorCode::invalid_vector);
  CHECK(code_of([&] { CorrelationVector::parse("2/5,7/5;1/5", s); }) == ErrorCode::invalid_vector);
  CHECK(code_of([&] { CorrelationVector(s, {q(1, 2), Scalar(0.5), q(1, 4)}); }) == ErrorCode::mode_mismatch);
  CHECK(p.in_mode(ArithmeticMode::floating).single(0).to_double() == doctest::Approx(0.4));
}

TEST_CASE("classical vertices of the two-event scenario") {
  const auto vs = enumerate_classical_vertices(Scenario::two_events());
  CHECK(labels(vs) == std::vector<std::string>{"(0,0;0)", "(0,1;0)", "(1,0;0)", "(1,1;1)"});
  const auto single = enumerate_classical_vertices(Scenario::make(1, {}));
  CHECK(labels(single) == std::vector<std::string>{"(0;)", "(1;)"});
  CHECK(epsilon_label(2, 2) == "10");
  CHECK(epsilon_bit(2, 2, 0) == 1);
  CHECK(epsilon_bit(2, 2, 1) == 0);
}

TEST_CASE("classical vertices of the Clauser-Horne scenario") {
  const Scenario s = Scenario::clauser_horne();
  const auto vs = enumerate_classical_vertices(s);
  REQUIRE(vs.size() == 16);
  std::set<std::vector<std::uint8_t>> distinct;
  for (std::uint64_t e = 0; e < 16; ++e) {
    const auto& v = vs[e];
    distinct.insert(v.bits());
    for (int i = 0; i < 4; ++i) CHECK(v.single(i) == epsilon_bit(4, e, i));
    for (std::size_t k = 0; k < s.num_pairs(); ++k) {
      const auto [i, j] = s.pairs()[k];
      CHECK(v.pair(k) == (v.single(i) & v.single(j)));
    }
    CHECK(v.kind() == VertexKind::classical);
  }
  CHECK(distinct.size() == 16);
}

TEST_CASE("all and quantum vertices") {
  CHECK(enumerate_all_vertices(Scenario::two_events()).size() == 8);
  CHECK(enumerate_all_vertices(Scenario::make(1, {})).size() == 2);
  CHECK(enumerate_all_vertices(Scenario::clauser_horne()).size() == 256);
  const auto qv = enumerate_quantum_vertices(Scenario::two_events());
  CHECK(labels(qv) == std::vector<std::string>{"(0,0;0)", "(0,1;0)", "(1,0;0)", "(1,1;0)", "(1,1;1)"});
  CHECK(code_of([] { enumerate_all_vertices(Scenario::make(7, {{1, 2}, {1, 3}, {1, 4}, {1, 5}, {1, 6}, {1, 7}, {2, 3}, {2, 4}, {2, 5}, {2, 6}, {2, 7}, {3, 4}, {3, 5}, {3, 6}})); }) ==
        ErrorCode::cap_exceeded);
}

TEST_CASE("classify vertex") {
  const Scenario s = Scenario::two_events();
  CHECK(classify_vertex(fixtures::vec("1,1;0")) == VertexKind::quantum_only);
  CHECK(classify_vertex(fixtures::vec("0,0;1")) == VertexKind::general_only);
  CHECK(classify_vertex(fixtures::vec("1,1;1")) == VertexKind::classical);
  CHECK(code_of([&] { classify_vertex(fixtures::vec("1/2,1;0")); }) == ErrorCode::non_binary);
}

TEST_CASE("property: family nesting over enumerated vertices") {
  for (const Scenario& s : {Scenario::two_events(), Scenario::clauser_horne(), Scenario::make(3, {{1, 2}, {2, 3}, {1, 3}})}) {
    const auto all = enumerate_all_vertices(s);
    std::set<std::vector<std::uint8_t>> all_bits, quantum_bits;
    for (const auto& v : all) all_bits.insert(v.bits());
    for (const auto& v : enumerate_quantum_vertices(s)) {
      CHECK(v.kind() != VertexKind::general_only);
      CHECK(all_bits.count(v.bits()) == 1);
      quantum_bits.insert(v.bits());
    }
    for (const auto& v : enumerate_classical_vertices(s)) CHECK(quantum_bits.count(v.bits()) == 1);
    std::size_t classical = 0, quantum = 0;
    for (const auto& v : all) {
      classical += v.kind() == VertexKind::classical;
      quantum += v.kind() != VertexKind::general_only;
    }
    CHECK(classical == (std::size_t{1} << s.n()));
    CHECK(quantum == quantum_bits.size());
  }
}

TEST_CASE("property: classify_vertex is invariant under CH symmetries") {
  // index permutations of {1,2,3,4} mapping S onto itself
  const Scenario s = Scenario::clauser_horne();
  const std::vector<std::array<int, 4>> perms{{1, 0, 2, 3}, {0, 1, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}, {1, 0, 3, 2}};
  for (const auto& v : enumerate_all_vertices(s)) {
    for (const auto& perm : perms) {
      std::vector<std::uint8_t> bits(8);
      for (int i = 0; i < 4; ++i) bits[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = v.single(i);
      for (std::size_t k = 0; k < 4; ++k) {
        const auto [i, j] = s.pairs()[k];
        const auto slot = s.pair_slot(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
        REQUIRE(slot.has_value());
        bits[4 + *slot] = v.pair(k);
      }
      CHECK(VertexVector(s, bits).kind() == v.kind());
    }
  }
}

TEST_CASE("independence vectors") {
  CHECK(is_independence_vector(fixtures::vec("1/2,1/2;1/4")));
  CHECK_FALSE(is_independence_vector(fixtures::vec("2/5,2/5;1/5")));
  for (const auto& v : enumerate_classical_vertices(Scenario::clauser_horne()))
    CHECK(is_independence_vector(v.to_correlation()));
  CHECK(is_independence_vector(fixtures::two(0.3, 0.7, 0.21), 1e-12));

  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> den(1, 60);
  for (int k = 0; k < 300; ++k) {
    const long da = den(rng), db = den(rng);
    const Scalar a = q(std::uniform_int_distribution<long>(0, da)(rng), da);
    const Scalar b = q(std::uniform_int_distribution<long>(0, db)(rng), db);
    CHECK(is_independence_vector(fixtures::two(a, b, a * b)));
    CHECK(is_independence_vector(independence_vector(Scenario::two_events(), {a, b})));
  }
}
