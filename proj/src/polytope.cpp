#include "bellscope/polytope.hpp"

#include <algorithm>

#include "bellscope/sampling.hpp"
#include "bellscope/simplex.hpp"

namespace bellscope {

std::vector<Scalar> MembershipResult::dense_weights(std::size_t family_size, ArithmeticMode mode) const {
  std::vector<Scalar> out(family_size, Scalar::zero(mode));
  for (const auto& term : coefficients) out.at(term.index) = term.weight;
  return out;
}

CorrelationVector reconstruct(const Scenario& s, const std::vector<WeightedVertex>& terms, ArithmeticMode mode) {
  std::vector<Scalar> acc(s.dimension(), Scalar::zero(mode));
  for (const auto& term : terms)
    for (std::size_t c = 0; c < acc.size(); ++c)
      if (term.vertex.bits()[c]) acc[c] += term.weight;
  return CorrelationVector(s, std::move(acc));
}

namespace {

template <class Field>
LinearSystem<Field> hull_system(const CorrelationVector& p, const std::vector<VertexVector>& vertices) {
  const std::size_t d = p.dimension();
  LinearSystem<Field> sys(d + 1, vertices.size());
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    const auto& bits = vertices[v].bits();
    for (std::size_t c = 0; c < d; ++c)
      if (bits[c]) sys.at(c, v) = Field(1);
    sys.at(d, v) = Field(1);
  }
  for (std::size_t c = 0; c < d; ++c) {
    if constexpr (std::is_same_v<Field, Rational>) sys.b[c] = p[c].rational();
    else sys.b[c] = p[c].to_double();
  }
  sys.b[d] = Field(1);
  return sys;
}

Scalar to_scalar(const Rational& q) { return Scalar(q); }
Scalar to_scalar(double d) { return Scalar(d); }

Scalar dot(const std::vector<Scalar>& w, const std::vector<std::uint8_t>& bits, ArithmeticMode mode) {
  Scalar acc = Scalar::zero(mode);
  for (std::size_t c = 0; c < w.size(); ++c)
    if (bits[c]) acc += w[c];
  return acc;
}

Scalar dot(const std::vector<Scalar>& w, const std::vector<Scalar>& x) {
  Scalar acc = Scalar::zero(x.front().mode());
  for (std::size_t c = 0; c < w.size(); ++c) acc += w[c] * x[c];
  return acc;
}

// Smallest integer multiple of a rational functional.
std::vector<Rational> integerize(std::vector<Rational> w) {
  mpz_class lcm = 1;
  for (const auto& q : w) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
  mpz_class g = 0;
  for (auto& q : w) {
    q *= lcm;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), q.get_num_mpz_t());
  }
  if (g > 1)
    for (auto& q : w) q /= g;
  return w;
}

template <class Field>
Certificate dual_certificate(const CorrelationVector& p, const std::vector<VertexVector>& vertices,
                             const std::vector<Field>& farkas) {
  const std::size_t d = p.dimension();
  const ArithmeticMode mode = p.mode();
  std::vector<Scalar> w;
  if constexpr (std::is_same_v<Field, Rational>) {
    auto ints = integerize(std::vector<Rational>(farkas.begin(), farkas.begin() + static_cast<long>(d)));
    for (auto& q : ints) w.emplace_back(q);
  } else {
    for (std::size_t c = 0; c < d; ++c) w.push_back(to_scalar(farkas[c]));
  }
  Certificate cert;
  cert.description = "separating functional from the phase-one dual";
  cert.bound = dot(w, vertices.front().bits(), mode);
  for (const auto& v : vertices) cert.bound = std::max(cert.bound, dot(w, v.bits(), mode));
  cert.value = dot(w, p.entries());
  cert.coefficients = std::move(w);
  if (mode == ArithmeticMode::exact && !(cert.value > cert.bound))
    throw Error(ErrorCode::internal, "dual certificate does not separate " + p.to_string());
  return cert;
}

template <class Field>
MembershipResult solve_membership(const CorrelationVector& p, Family family) {
  auto vertices = enumerate_vertices(p.scenario(), family);
  auto sys = hull_system<Field>(p, vertices);
  auto solution = solve_feasibility(sys);

  MembershipResult result;
  result.family = family;
  result.pivots = solution.pivots;
  result.inside = solution.feasible;
  if (solution.feasible) {
    for (std::size_t v = 0; v < vertices.size(); ++v) {
      if (solution.x[v] == Field(0)) continue;
      result.coefficients.push_back({v, vertices[v], to_scalar(solution.x[v])});
    }
    if (p.mode() == ArithmeticMode::exact && reconstruct(p.scenario(), result.coefficients, p.mode()) != p)
      throw Error(ErrorCode::internal, "LP expansion does not reconstruct " + p.to_string());
    return result;
  }

  if (family == Family::classical && facets_supported(p.scenario())) {
    auto report = evaluate_facets(p);
    if (const auto* violated = report.first_violated()) {
      result.certificate = facet_certificate(*violated, p);
      return result;
    }
  }
  result.certificate = dual_certificate<Field>(p, vertices, solution.farkas);
  return result;
}

}  // namespace

MembershipResult membership(const CorrelationVector& p, Family family) {
  if (p.mode() == ArithmeticMode::exact) return solve_membership<Rational>(p, family);
  return solve_membership<double>(p, family);
}

bool FacetReport::all_satisfied() const {
  return std::all_of(entries.begin(), entries.end(), [](const FacetEntry& e) { return e.satisfied; });
}

const FacetEntry* FacetReport::first_violated() const {
  for (const auto& e : entries)
    if (!e.satisfied) return &e;
  return nullptr;
}

bool facets_supported(const Scenario& s) { return s.is_two_events() || s.is_clauser_horne(); }

namespace {

class FacetBuilder {
 public:
  FacetBuilder(const CorrelationVector& p, double tol) : p_(p), tol_(tol), mode_(p.mode()) {}

  std::size_t single(int i) const { return static_cast<std::size_t>(i); }
  std::size_t pair(int i, int j) const {
    return static_cast<std::size_t>(p_.scenario().n()) + *p_.scenario().pair_slot(i, j);
  }

  void add(std::string id, std::vector<std::pair<std::size_t, long>> terms, std::optional<long> lower,
           std::optional<long> upper) {
    FacetEntry e;
    e.id = std::move(id);
    e.coefficients.assign(p_.dimension(), Scalar::zero(mode_));
    for (auto [c, k] : terms) e.coefficients[c] += Scalar::exact(k).in_mode(mode_);
    e.value = Scalar::zero(mode_);
    for (std::size_t c = 0; c < p_.dimension(); ++c) e.value += e.coefficients[c] * p_[c];
    const Scalar slack = mode_ == ArithmeticMode::exact ? Scalar::zero(mode_) : Scalar(tol_);
    if (lower) {
      e.lower = Scalar::exact(*lower).in_mode(mode_);
      if (e.value < *e.lower - slack) e.satisfied = false;
    }
    if (upper) {
      e.upper = Scalar::exact(*upper).in_mode(mode_);
      if (e.value > *e.upper + slack) e.satisfied = false;
    }
    report.entries.push_back(std::move(e));
  }

  void trivial_family(int i, int j) {
    const auto& s = p_.scenario();
    std::string pij = s.coordinate_name(pair(i, j));
    std::string pi = s.coordinate_name(single(i));
    std::string pj = s.coordinate_name(single(j));
    add(pij + " >= 0", {{pair(i, j), 1}}, 0, std::nullopt);
    add(pij + " <= " + pi, {{pair(i, j), 1}, {single(i), -1}}, std::nullopt, 0);
    add(pij + " <= " + pj, {{pair(i, j), 1}, {single(j), -1}}, std::nullopt, 0);
  }

  void unit_bound(int i) {
    add(p_.scenario().coordinate_name(single(i)) + " <= 1", {{single(i), 1}}, std::nullopt, 1);
  }

  void bell(int i, int j) {
    const auto& s = p_.scenario();
    add(s.coordinate_name(single(i)) + " + " + s.coordinate_name(single(j)) + " - " +
            s.coordinate_name(pair(i, j)) + " <= 1",
        {{single(i), 1}, {single(j), 1}, {pair(i, j), -1}}, std::nullopt, 1);
  }

  FacetReport report;

 private:
  const CorrelationVector& p_;
  double tol_;
  ArithmeticMode mode_;
};

}  // namespace

Scalar clauser_horne_expression(const CorrelationVector& p, int i, int j) {
  const auto& s = p.scenario();
  if (!s.is_clauser_horne()) throw Error(ErrorCode::unsupported_scenario, "not the Clauser-Horne scenario");
  const int ip = 1 - i;
  const int jp = 5 - j;
  auto pr = [&](int a, int b) { return p.pair(*s.pair_slot(a, b)); };
  return pr(i, j) + pr(ip, j) + pr(i, jp) - pr(ip, jp) - p.single(i) - p.single(j);
}

FacetReport evaluate_facets(const CorrelationVector& p, double tol) {
  const auto& s = p.scenario();
  FacetBuilder b(p, tol);
  if (s.is_two_events()) {
    b.trivial_family(0, 1);
    b.unit_bound(0);
    b.unit_bound(1);
    b.bell(0, 1);
    return std::move(b.report);
  }
  if (s.is_clauser_horne()) {
    for (int i : {0, 1})
      for (int j : {2, 3}) b.trivial_family(i, j);
    for (int i = 0; i < 4; ++i) b.unit_bound(i);
    for (int i : {0, 1})
      for (int j : {2, 3}) b.bell(i, j);
    for (int i : {0, 1}) {
      for (int j : {2, 3}) {
        const int ip = 1 - i;
        const int jp = 5 - j;
        b.add("CH(i=" + std::to_string(i + 1) + ",j=" + std::to_string(j + 1) + ")",
              {{b.pair(i, j), 1}, {b.pair(ip, j), 1}, {b.pair(i, jp), 1}, {b.pair(ip, jp), -1},
               {b.single(i), -1}, {b.single(j), -1}},
              -1, 0);
      }
    }
    return std::move(b.report);
  }
  throw Error(ErrorCode::unsupported_scenario,
              "facets are known only for n = 2, S = {(1,2)} and the Clauser-Horne scenario");
}

Certificate facet_certificate(const FacetEntry& entry, const CorrelationVector& p) {
  Certificate cert;
  cert.facet_id = entry.id;
  const bool upper_violated = entry.upper && entry.value > *entry.upper;
  if (upper_violated) {
    cert.coefficients = entry.coefficients;
    cert.bound = *entry.upper;
    cert.value = entry.value;
    cert.description = "violates " + entry.id;
  } else {
    for (const auto& c : entry.coefficients) cert.coefficients.push_back(-c);
    cert.bound = -*entry.lower;
    cert.value = -entry.value;
    cert.description = "violates lower bound of " + entry.id;
  }
  (void)p;
  return cert;
}

EquivalenceReport facet_lp_equivalence_check(const Scenario& s, std::size_t samples, std::uint64_t seed,
                                             std::span<const CorrelationVector> extra) {
  if (!facets_supported(s)) throw Error(ErrorCode::unsupported_scenario, "no facet system for this scenario");
  EquivalenceReport report;
  report.seed = seed;
  Sampler sampler(seed);
  auto check = [&](const CorrelationVector& p) {
    ++report.samples;
    bool lp_inside = membership(p, Family::classical).inside;
    bool facets_ok = evaluate_facets(p).all_satisfied();
    if (lp_inside) ++report.inside;
    if (lp_inside != facets_ok) report.counterexamples.push_back(p);
  };
  for (const auto& p : extra) check(p);
  for (std::size_t k = 0; k < samples; ++k) check(sampler.cube_vector(s));
  return report;
}

std::vector<Scalar> product_expansion(const CorrelationVector& p, double tol) {
  if (!is_independence_vector(p, tol))
    throw Error(ErrorCode::not_independence_vector, p.to_string() + " has p_ij != p_i p_j");
  const int n = p.scenario().n();
  if (n > kEnumerationCapBits) throw Error(ErrorCode::cap_exceeded, "too many events for a product expansion");
  const ArithmeticMode mode = p.mode();
  const Scalar one = Scalar::one(mode);
  std::vector<Scalar> lambda;
  lambda.reserve(std::size_t{1} << n);
  for (std::uint64_t eps = 0; eps < (std::uint64_t{1} << n); ++eps) {
    Scalar w = one;
    for (int i = 0; i < n; ++i) w *= epsilon_bit(n, eps, i) ? p.single(i) : one - p.single(i);
    lambda.push_back(std::move(w));
  }
  return lambda;
}

}  // namespace bellscope
