#include "bellscope/classical_rep.hpp"

#include "bellscope/simplex.hpp"

namespace bellscope {

std::string bits_label(std::uint64_t bits, int n) { return epsilon_label(n, bits); }

FiniteProbSpace build_kolmogorov_rep(const CorrelationVector& p, const std::vector<Scalar>& lambda) {
  const Scenario& s = p.scenario();
  const int n = s.n();
  if (lambda.size() != (std::size_t{1} << n))
    throw Error(ErrorCode::not_convex, "expected one coefficient per classical vertex");
  require_mode(lambda, p.mode());

  std::vector<std::string> labels;
  std::vector<Scalar> weights;
  std::vector<std::uint64_t> eps_of_atom;
  for (std::uint64_t eps = 0; eps < lambda.size(); ++eps) {
    if (lambda[eps].sign() < 0) throw Error(ErrorCode::not_convex, "negative coefficient");
    if (lambda[eps].is_zero()) continue;
    labels.push_back("eps=" + epsilon_label(n, eps));
    weights.push_back(lambda[eps]);
    eps_of_atom.push_back(eps);
  }
  if (labels.empty()) throw Error(ErrorCode::not_convex, "all coefficients are zero");
  FiniteProbSpace space(std::move(labels), std::move(weights));
  for (int i = 0; i < n; ++i) {
    space.define_event("A" + std::to_string(i + 1),
                       space.where([&](std::size_t a) { return epsilon_bit(n, eps_of_atom[a], i) == 1; }));
  }

  constexpr double tol = 1e-9;
  for (int i = 0; i < n; ++i) {
    if (!approx_equal(space.probability(space.event("A" + std::to_string(i + 1))), p.single(i), tol))
      throw Error(ErrorCode::reconstruction_mismatch, "p(A" + std::to_string(i + 1) + ") differs from p");
  }
  for (std::size_t k = 0; k < s.num_pairs(); ++k) {
    const auto& pr = s.pairs()[k];
    Event both = space.event("A" + std::to_string(pr.first + 1)) & space.event("A" + std::to_string(pr.second + 1));
    if (!approx_equal(space.probability(both), p.pair(k), tol))
      throw Error(ErrorCode::reconstruction_mismatch, "p(A_i & A_j) differs from p for pair " + s.pair_key(k));
  }
  return space;
}

bool check_admissibility(const CorrelationVector& p) {
  const Scenario& s = p.scenario();
  for (std::size_t k = 0; k < s.num_pairs(); ++k) {
    const auto& pr = s.pairs()[k];
    const Scalar& pi = p.single(pr.first);
    const Scalar& pj = p.single(pr.second);
    const Scalar& pij = p.pair(k);
    if ((pi.is_zero() || pj.is_zero()) && !pij.is_zero()) return false;
    if (pi.is_one() && pj.is_one() && !pij.is_one()) return false;
  }
  return true;
}

namespace {

int popcount(std::uint64_t x) { return __builtin_popcountll(x); }

template <class Field>
Field power(const Field& base, int e) {
  Field r(1);
  for (int k = 0; k < e; ++k) r *= base;
  return r;
}

template <class Field>
Field field_of(const Scalar& x) {
  if constexpr (std::is_same_v<Field, Rational>) return x.rational();
  else return x.to_double();
}

// Unknowns q_sigma(omega) at column sigma * 2^n + omega.
template <class Field>
std::optional<std::vector<Field>> solve_outcomes(const CorrelationVector& p, const Field& s,
                                                 const ConditionalRepOptions& options) {
  const Scenario& sc = p.scenario();
  const int n = sc.n();
  const std::uint64_t contexts = std::uint64_t{1} << n;
  const std::size_t cols = contexts * contexts;
  const std::size_t pair_rows = sc.num_pairs() * (options.require_nonsignaling ? 3 : 1);
  LinearSystem<Field> sys(contexts + static_cast<std::size_t>(n) + pair_rows, cols);

  const Field one(1);
  // pi(sigma | sigma_i = 1) = s^(|sigma|-1) (1-s)^(n-|sigma|), and similarly
  // for two fixed settings.
  auto given_one = [&](std::uint64_t sigma) { return Field(power(s, popcount(sigma) - 1) * power(Field(one - s), n - popcount(sigma))); };
  auto given_two = [&](std::uint64_t sigma) { return Field(power(s, popcount(sigma) - 2) * power(Field(one - s), n - popcount(sigma))); };
  auto bit = [&](std::uint64_t v, int i) { return epsilon_bit(n, v, i) == 1; };

  std::size_t row = 0;
  for (std::uint64_t sigma = 0; sigma < contexts; ++sigma, ++row) {
    for (std::uint64_t omega = 0; omega < contexts; ++omega) sys.at(row, sigma * contexts + omega) = one;
    sys.b[row] = one;
  }
  for (int i = 0; i < n; ++i, ++row) {
    for (std::uint64_t sigma = 0; sigma < contexts; ++sigma) {
      if (!bit(sigma, i)) continue;
      Field w = given_one(sigma);
      for (std::uint64_t omega = 0; omega < contexts; ++omega)
        if (bit(omega, i)) sys.at(row, sigma * contexts + omega) = w;
    }
    sys.b[row] = field_of<Field>(p.single(i));
  }
  for (std::size_t k = 0; k < sc.num_pairs(); ++k) {
    const auto& pr = sc.pairs()[k];
    auto add_row = [&](auto omega_pred, const Scalar& target) {
      for (std::uint64_t sigma = 0; sigma < contexts; ++sigma) {
        if (!bit(sigma, pr.first) || !bit(sigma, pr.second)) continue;
        Field w = given_two(sigma);
        for (std::uint64_t omega = 0; omega < contexts; ++omega)
          if (omega_pred(omega)) sys.at(row, sigma * contexts + omega) = w;
      }
      sys.b[row] = field_of<Field>(target);
      ++row;
    };
    add_row([&](std::uint64_t w) { return bit(w, pr.first) && bit(w, pr.second); }, p.pair(k));
    if (options.require_nonsignaling) {
      add_row([&](std::uint64_t w) { return bit(w, pr.first); }, p.single(pr.first));
      add_row([&](std::uint64_t w) { return bit(w, pr.second); }, p.single(pr.second));
    }
  }

  auto result = solve_feasibility(sys);
  if (!result.feasible) return std::nullopt;
  return std::move(result.x);
}

template <class Field>
ConditionalRep assemble(const CorrelationVector& p, const Field& s, const std::vector<Field>& q) {
  const int n = p.scenario().n();
  const std::uint64_t contexts = std::uint64_t{1} << n;
  const Field one(1);
  std::vector<std::string> labels;
  std::vector<Scalar> weights;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> atoms;
  for (std::uint64_t sigma = 0; sigma < contexts; ++sigma) {
    Field prior = power(s, popcount(sigma)) * power(Field(one - s), n - popcount(sigma));
    for (std::uint64_t omega = 0; omega < contexts; ++omega) {
      const Field& qv = q[sigma * contexts + omega];
      if (qv == Field(0)) continue;
      labels.push_back("sigma=" + epsilon_label(n, sigma) + "|omega=" + epsilon_label(n, omega));
      weights.emplace_back(Field(prior * qv));
      atoms.emplace_back(sigma, omega);
    }
  }
  if constexpr (std::is_same_v<Field, double>) {
    // Absorb simplex round-off so the weights sum to one.
    double total = 0.0;
    for (const auto& w : weights) total += w.to_double();
    for (auto& w : weights) w = Scalar(w.to_double() / total);
  }
  ConditionalRep rep{FiniteProbSpace(std::move(labels), std::move(weights)), {}, {}, Scalar(s)};
  for (int i = 0; i < n; ++i) {
    Event outcome = rep.space.where([&](std::size_t a) { return epsilon_bit(n, atoms[a].second, i) == 1; });
    Event setting = rep.space.where([&](std::size_t a) { return epsilon_bit(n, atoms[a].first, i) == 1; });
    rep.space.define_event("A" + std::to_string(i + 1), outcome);
    rep.space.define_event("a" + std::to_string(i + 1), setting);
    rep.outcomes.push_back(std::move(outcome));
    rep.settings.push_back(std::move(setting));
  }
  return rep;
}

template <class Field>
ConditionalRep build_with(const CorrelationVector& p, const ConditionalRepOptions& options) {
  constexpr int kHalvings = 12;
  Field s(1);
  std::string tried;
  for (int h = 1; h <= kHalvings; ++h) {
    s /= Field(2);
    if (auto q = solve_outcomes<Field>(p, s, options)) {
      auto rep = assemble<Field>(p, s, *q);
      auto check = verify_conditional_rep(rep, p);
      if (!check.agrees) throw Error(ErrorCode::internal, "conditional rep does not reproduce " + p.to_string());
      return rep;
    }
    tried += (tried.empty() ? "" : ", ") + Scalar(s).to_string();
  }
  throw Error(ErrorCode::lp_infeasible, "no outcome distribution for " + p.to_string() +
                                            (options.require_nonsignaling ? " with non-signaling" : "") +
                                            " at setting probabilities {" + tried + "}");
}

}  // namespace

ConditionalRep build_conditional_rep(const CorrelationVector& p, ConditionalRepOptions options) {
  if (!check_admissibility(p))
    throw Error(ErrorCode::inadmissible, p.to_string() + " has a pair with p_i or p_j = 0 but p_ij != 0, "
                                                         "or p_i = p_j = 1 but p_ij != 1");
  if (p.scenario().n() > kConditionalCap)
    throw Error(ErrorCode::cap_exceeded, "conditional representations are built for n <= " +
                                             std::to_string(kConditionalCap));
  if (p.mode() == ArithmeticMode::exact) return build_with<Rational>(p, options);
  return build_with<double>(p, options);
}

ConditionalVerification verify_conditional_rep(const ConditionalRep& rep, const CorrelationVector& p, double tol) {
  const Scenario& s = p.scenario();
  const int n = s.n();
  if (rep.outcomes.size() != static_cast<std::size_t>(n) || rep.settings.size() != static_cast<std::size_t>(n))
    throw Error(ErrorCode::dimension_mismatch, "representation has the wrong number of events");
  ConditionalVerification out;
  auto record = [&](std::string name, const Scalar& expected, Scalar actual) {
    bool ok = approx_equal(expected, actual, tol);
    out.agrees = out.agrees && ok;
    out.checks.push_back({std::move(name), expected, std::move(actual), ok});
  };
  for (int i = 0; i < n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    std::string k = std::to_string(i + 1);
    record("p(A" + k + "|a" + k + ")", p.single(i), rep.space.conditional(rep.outcomes[idx], rep.settings[idx]));
  }
  for (std::size_t k = 0; k < s.num_pairs(); ++k) {
    const auto& pr = s.pairs()[k];
    const auto i = static_cast<std::size_t>(pr.first);
    const auto j = static_cast<std::size_t>(pr.second);
    std::string a = std::to_string(pr.first + 1), b = std::to_string(pr.second + 1);
    record("p(A" + a + "&A" + b + "|a" + a + "&a" + b + ")", p.pair(k),
           rep.space.conditional(rep.outcomes[i] & rep.outcomes[j], rep.settings[i] & rep.settings[j]));
  }
  return out;
}

bool NonsignalingReport::nonsignaling() const {
  for (const auto& c : pairs)
    if (!c.nonsignaling) return false;
  return true;
}

NonsignalingReport check_nonsignaling(const ConditionalRep& rep, const Scenario& s, double tol) {
  NonsignalingReport report;
  for (const auto& pr : s.pairs()) {
    const auto i = static_cast<std::size_t>(pr.first);
    const auto j = static_cast<std::size_t>(pr.second);
    const Event both = rep.settings[i] & rep.settings[j];
    SignalingCheck c{pr,
                     rep.space.conditional(rep.outcomes[i], rep.settings[i]),
                     rep.space.conditional(rep.outcomes[i], both),
                     rep.space.conditional(rep.outcomes[j], rep.settings[j]),
                     rep.space.conditional(rep.outcomes[j], both),
                     false};
    c.nonsignaling = approx_equal(c.first_given_own, c.first_given_both, tol) &&
                     approx_equal(c.second_given_own, c.second_given_both, tol);
    report.pairs.push_back(std::move(c));
  }
  return report;
}

CorrelationVector represented_vector(const ConditionalRep& rep, const Scenario& s) {
  std::vector<Scalar> entries;
  for (int i = 0; i < s.n(); ++i) {
    const auto idx = static_cast<std::size_t>(i);
    entries.push_back(rep.space.conditional(rep.outcomes[idx], rep.settings[idx]));
  }
  for (const auto& pr : s.pairs()) {
    const auto i = static_cast<std::size_t>(pr.first);
    const auto j = static_cast<std::size_t>(pr.second);
    entries.push_back(rep.space.conditional(rep.outcomes[i] & rep.outcomes[j], rep.settings[i] & rep.settings[j]));
  }
  return CorrelationVector(s, std::move(entries));
}

ConditionalRep as_conditional(const FiniteProbSpace& space, int n) {
  ConditionalRep rep{space, {}, {}, std::nullopt};
  for (int i = 0; i < n; ++i) {
    std::string k = std::to_string(i + 1);
    rep.outcomes.push_back(space.event("A" + k));
    rep.settings.push_back(space.all());
    rep.space.define_event("a" + k, space.all());
  }
  return rep;
}

}  // namespace bellscope
