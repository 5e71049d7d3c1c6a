#include <doctest.h>

#include <cmath>

#include "bellscope/common_cause.hpp"
#include "bellscope/error.hpp"
#include "bellscope/sampling.hpp"
#include "support/fixtures.hpp"

using namespace bellscope;
using fixtures::q;
using fixtures::vec;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::internal;
}

std::vector<Event> singletons(const FiniteProbSpace& space) {
  std::vector<Event> cells;
  for (std::size_t k = 0; k < space.size(); ++k) cells.push_back(space.where([k](std::size_t a) { return a == k; }));
  return cells;
}

std::vector<CorrelationVector> vertices(const Scenario& s, ArithmeticMode mode) {
  std::vector<CorrelationVector> out;
  for (const auto& v : enumerate_classical_vertices(s)) out.push_back(v.to_correlation(mode));
  return out;
}

CommonCauseExplanation property_explanation(const CorrelationVector& p) {
  const auto d = decompose_deterministic(p);
  const std::size_t causes = std::size_t{1} << p.scenario().n();
  const auto lambda = membership(p, Family::classical).dense_weights(causes, p.mode());
  const auto rep = build_conditional_rep(p, {.require_nonsignaling = true});
  return build_propensity_explanation(p, lambda, vertices(p.scenario(), p.mode()), rep);
}

}  // namespace

TEST_CASE("screening on the Kolmogorov space of (2/5,2/5;1/5)") {
  const auto p = vec("2/5,2/5;1/5");
  const auto m = membership(p, Family::classical);
  const auto space = build_kolmogorov_rep(p, m.dense_weights(4, ArithmeticMode::exact));
  const std::vector<Event> outcomes{space.event("A1"), space.event("A2")};
  const auto cells = singletons(space);
  const auto pass = verify_screening(space, outcomes, p.scenario(), cells);
  CHECK(pass.pass);
  CHECK_FALSE(pass.conditional_form);

  const std::vector<Event> trivial{space.all()};
  const auto fail = verify_screening(space, outcomes, p.scenario(), trivial);
  CHECK_FALSE(fail.pass);
  REQUIRE(fail.factorization.size() == 1);
  CHECK(fail.factorization[0].residual == q(1, 5) - q(4, 25));

  const std::vector<Event> overlapping{space.all(), cells[0]};
  CHECK(code_of([&] { verify_screening(space, outcomes, p.scenario(), overlapping); }) == ErrorCode::not_a_partition);
}

TEST_CASE("deterministic decomposition") {
  const auto d = decompose_deterministic(vec("2/5,2/5;1/5"));
  CHECK(d.kind == CauseKind::deterministic);
  REQUIRE(d.weights.size() == 4);
  CHECK(d.weights == std::vector<Scalar>{q(2, 5), q(1, 5), q(1, 5), q(1, 5)});
  CHECK(d.combined() == vec("2/5,2/5;1/5"));
  const auto single = decompose_deterministic(vec("1,1;1"));
  REQUIRE(single.weights.size() == 1);
  CHECK(single.weights[0] == q(1));
  CHECK(code_of([] { decompose_deterministic(vec("2/3,2/3;1/5")); }) == ErrorCode::outside_polytope);
}

TEST_CASE("indeterministic decomposition of (2/5,2/5;1/5)") {
  const auto p = vec("2/5,2/5;1/5").in_mode(ArithmeticMode::floating);
  auto comps = fixtures::two_fifths_components();
  // the listing order (1/4..), ((3+r5)/8..), ((3-r5)/8..), (1/2..)
  std::vector<CorrelationVector> listed{comps[3], comps[2], comps[1], comps[0]};
  const auto d = decompose_indeterministic(p, listed);
  CHECK(d.kind == CauseKind::indeterministic);
  CHECK(d.same_coefficients_as_vertex_expansion);
  const double expected[] = {0.2, 0.2, 0.2, 0.4};
  for (std::size_t k = 0; k < 4; ++k) CHECK(d.weights[k].to_double() == doctest::Approx(expected[k]).epsilon(1e-9));
  const auto combined = d.combined();
  for (std::size_t c = 0; c < 3; ++c) CHECK(std::abs(combined[c].to_double() - p[c].to_double()) <= 1e-9);

  const auto ascending = decompose_indeterministic(p, comps);
  CHECK(ascending.weights[0].to_double() == doctest::Approx(0.4));

  CHECK(code_of([&] { decompose_indeterministic(p, {fixtures::two(0.5, 0.5, 0.25)}); }) == ErrorCode::lp_infeasible);
  CHECK(code_of([&] { decompose_indeterministic(p, {fixtures::two(0.4, 0.4, 0.2)}); }) == ErrorCode::not_independence_vector);
}

TEST_CASE("indeterministic decomposition over the vertex family reduces to the deterministic one") {
  const auto p = vec("2/5,2/5;1/5");
  const auto d = decompose_indeterministic(p, vertices(p.scenario(), ArithmeticMode::exact));
  CHECK(d.kind == CauseKind::deterministic);
  CHECK(d.weights == decompose_deterministic(p).weights);
}

TEST_CASE("property: exact indeterministic decompositions reproduce p") {
  Sampler rng(71);
  const Scenario s = Scenario::two_events();
  for (int k = 0; k < 100; ++k) {
    std::vector<CorrelationVector> targets;
    std::vector<Scalar> w;
    Scalar total = q(0);
    for (int t = 0; t < 3; ++t) {
      targets.push_back(independence_vector(s, {Scalar(rng.unit_rational()), Scalar(rng.unit_rational())}));
      w.emplace_back(rng.unit_rational() + Rational(1, 10));
      total += w.back();
    }
    std::vector<Scalar> e(3, q(0));
    for (int t = 0; t < 3; ++t)
      for (std::size_t c = 0; c < 3; ++c) e[c] += w[static_cast<std::size_t>(t)] / total * targets[static_cast<std::size_t>(t)][c];
    const CorrelationVector p(s, e);
    const auto d = decompose_indeterministic(p, targets);
    CHECK(d.combined() == p);
  }
}

TEST_CASE("property explanation of (2/5,2/5;1/5)") {
  const auto p = vec("2/5,2/5;1/5");
  const auto e = property_explanation(p);
  CHECK(e.deterministic);
  CHECK(e.screening.pass);
  CHECK(e.screening.conditional_form);
  for (const auto& row : cell_values(e.as_rep(), e.partition))
    for (const auto& v : row) CHECK((v.is_zero() || v.is_one()));
  CHECK(check_nonsignaling(e.as_rep(), p.scenario()).nonsignaling());
  const auto k = extract_kolmogorov_from_property(e.as_rep(), e.partition, p.scenario(), e.cell_labels);
  CHECK(k.probability(k.event("C1")) == q(2, 5));
  CHECK(k.probability(k.event("C1") & k.event("C2")) == q(1, 5));
}

TEST_CASE("property explanation of a vertex is a point mass") {
  const auto p = vec("1,1;1");
  const auto e = property_explanation(p);
  REQUIRE(e.partition.size() == 1);
  const auto k = extract_kolmogorov_from_property(e.as_rep(), e.partition, p.scenario(), e.cell_labels);
  CHECK(k.size() == 1);
  CHECK(k.weights()[0] == q(1));
}

TEST_CASE("propensity explanation from four independence components") {
  const auto p = vec("2/5,2/5;1/5").in_mode(ArithmeticMode::floating);
  const auto rep = build_conditional_rep(p, {.require_nonsignaling = true});
  const std::vector<Scalar> lambda{Scalar(0.4), Scalar(0.2), Scalar(0.2), Scalar(0.2)};
  const auto e = build_propensity_explanation(p, lambda, fixtures::two_fifths_components(), rep);
  CHECK_FALSE(e.deterministic);
  CHECK(e.screening.pass);
  for (const auto& r : e.screening.factorization) CHECK(std::abs(r.residual.to_double()) <= 1e-9);
  for (const auto& r : e.screening.no_conspiracy) CHECK(std::abs(r.residual.to_double()) <= 1e-9);
  CHECK(code_of([&] { extract_kolmogorov_from_property(e.as_rep(), e.partition, p.scenario(), e.cell_labels); }) ==
        ErrorCode::non_deterministic);
}

TEST_CASE("signaling representations are rejected") {
  const auto p = vec("2/3,2/3;1/5");
  const std::vector<Scalar> lambda{q(1, 4), q(1, 4), q(1, 4), q(1, 4)};
  CHECK(code_of([&] {
          build_propensity_explanation(p, lambda, vertices(p.scenario(), ArithmeticMode::exact), fixtures::signaling_rep());
        }) == ErrorCode::signaling_rejected);
}

TEST_CASE("coefficients must reproduce p") {
  const auto p = vec("2/5,2/5;1/5");
  const auto rep = build_conditional_rep(p, {.require_nonsignaling = true});
  const std::vector<Scalar> lambda{q(1, 4), q(1, 4), q(1, 4), q(1, 4)};
  CHECK(code_of([&] { build_propensity_explanation(p, lambda, vertices(p.scenario(), ArithmeticMode::exact), rep); }) ==
        ErrorCode::coefficient_mismatch);
}

TEST_CASE("property: round trip on random classical CH vectors") {
  Sampler rng(73);
  const Scenario s = Scenario::clauser_horne();
  for (int k = 0; k < 2; ++k) {
    const auto p = rng.hull_vector(s, Family::classical, 3);
    const auto e = property_explanation(p);
    CHECK(e.screening.pass);
    const auto kol = extract_kolmogorov_from_property(e.as_rep(), e.partition, s, e.cell_labels);
    auto ev = [&](int i) { return kol.event("C" + std::to_string(i + 1)); };
    for (int i = 0; i < 4; ++i) CHECK(kol.probability(ev(i)) == p.single(i));
    for (std::size_t slot = 0; slot < s.num_pairs(); ++slot) {
      const auto [i, j] = s.pairs()[slot];
      CHECK(kol.probability(ev(i) & ev(j)) == p.pair(slot));
    }
  }
}

TEST_CASE("Bell violation blocks the explanation, not the representation") {
  Sampler rng(79);
  int outside = 0;
  for (int k = 0; k < 200 && outside < 20; ++k) {
    const auto p = rng.cube_vector(Scenario::two_events());
    if (!check_admissibility(p) || membership(p, Family::classical).inside) continue;
    ++outside;
    CHECK(verify_conditional_rep(build_conditional_rep(p), p).agrees);
    CHECK(code_of([&] { decompose_deterministic(p); }) == ErrorCode::outside_polytope);
  }
  CHECK(outside == 20);
}
