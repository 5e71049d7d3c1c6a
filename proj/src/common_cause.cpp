#include "bellscope/common_cause.hpp"

#include <algorithm>

#include "bellscope/simplex.hpp"

namespace bellscope {

std::string_view to_string(CauseKind kind) {
  return kind == CauseKind::deterministic ? "deterministic" : "indeterministic";
}

CorrelationVector CommonCauseDecomposition::combined() const {
  if (components.empty()) throw Error(ErrorCode::invalid_vector, "empty decomposition");
  const auto& s = components.front().scenario();
  const auto mode = components.front().mode();
  std::vector<Scalar> acc(s.dimension(), Scalar::zero(mode));
  for (std::size_t k = 0; k < components.size(); ++k)
    for (std::size_t c = 0; c < acc.size(); ++c) acc[c] += weights[k] * components[k][c];
  return CorrelationVector(s, std::move(acc));
}

namespace {

double tolerance_for(ArithmeticMode mode) { return mode == ArithmeticMode::exact ? 0.0 : kScreeningTolerance; }

bool within(const Scalar& residual, double tol) {
  if (residual.is_exact()) return residual.is_zero();
  return std::abs(residual.to_double()) <= tol;
}

void require_partition(const FiniteProbSpace& space, std::span<const Event> partition) {
  if (partition.empty()) throw Error(ErrorCode::not_a_partition, "empty partition");
  Event covered = space.none();
  for (const auto& cell : partition) {
    if (cell.universe() != space.size()) throw Error(ErrorCode::not_a_partition, "cell from a different space");
    if (!(covered & cell).empty()) throw Error(ErrorCode::not_a_partition, "cells overlap");
    covered = covered | cell;
    if (space.probability(cell).sign() <= 0) throw Error(ErrorCode::zero_probability, "zero-probability cell");
  }
  if (covered != space.all()) throw Error(ErrorCode::not_a_partition, "cells do not cover every atom");
}

bool is_classical_vertex(const CorrelationVector& v) {
  for (const auto& e : v.entries())
    if (!e.is_zero() && !e.is_one()) return false;
  return classify_vertex(v) == VertexKind::classical;
}

CauseKind kind_of(const std::vector<CorrelationVector>& components) {
  for (const auto& c : components)
    if (!is_classical_vertex(c)) return CauseKind::indeterministic;
  return CauseKind::deterministic;
}

}  // namespace

ScreeningReport verify_screening(const FiniteProbSpace& space, std::span<const Event> outcomes, const Scenario& s,
                                 std::span<const Event> partition, std::span<const Event> settings) {
  require_partition(space, partition);
  if (outcomes.size() != static_cast<std::size_t>(s.n()))
    throw Error(ErrorCode::dimension_mismatch, "need one outcome event per index");
  ScreeningReport report;
  report.conditional_form = !settings.empty();
  report.tolerance = tolerance_for(space.mode());
  if (report.conditional_form && settings.size() != outcomes.size())
    throw Error(ErrorCode::dimension_mismatch, "need one setting event per index");

  bool pass = true;
  for (const auto& pr : s.pairs()) {
    const auto i = static_cast<std::size_t>(pr.first);
    const auto j = static_cast<std::size_t>(pr.second);
    for (std::size_t k = 0; k < partition.size(); ++k) {
      const Event& cell = partition[k];
      Scalar residual;
      if (!report.conditional_form) {
        residual = space.conditional(outcomes[i] & outcomes[j], cell) -
                   space.conditional(outcomes[i], cell) * space.conditional(outcomes[j], cell);
      } else {
        const Event both = settings[i] & settings[j];
        residual = space.conditional(outcomes[i] & outcomes[j], both & cell) -
                   space.conditional(outcomes[i], settings[i] & cell) *
                       space.conditional(outcomes[j], settings[j] & cell);
        Scalar conspiracy = space.probability(both & cell) - space.probability(both) * space.probability(cell);
        pass = pass && within(conspiracy, report.tolerance);
        report.no_conspiracy.push_back({pr, k, std::move(conspiracy)});
      }
      pass = pass && within(residual, report.tolerance);
      report.factorization.push_back({pr, k, std::move(residual)});
    }
  }
  report.pass = pass;
  return report;
}

CommonCauseDecomposition decompose_deterministic(const CorrelationVector& p) {
  auto m = membership(p, Family::classical);
  if (!m.inside)
    throw Error(ErrorCode::outside_polytope,
                p.to_string() + " is not in c(n,S): " + (m.certificate ? m.certificate->description : ""));
  CommonCauseDecomposition d;
  d.kind = CauseKind::deterministic;
  d.same_coefficients_as_vertex_expansion = true;
  const int n = p.scenario().n();
  for (const auto& term : m.coefficients) {
    d.labels.push_back("eps=" + epsilon_label(n, term.index));
    d.weights.push_back(term.weight);
    d.components.push_back(term.vertex.to_correlation(p.mode()));
  }
  return d;
}

CommonCauseDecomposition decompose_indeterministic(const CorrelationVector& p,
                                                   const std::vector<CorrelationVector>& targets, double tol) {
  const Scenario& s = p.scenario();
  if (targets.empty()) throw Error(ErrorCode::lp_infeasible, "no target vectors");
  for (const auto& t : targets) {
    if (t.scenario() != s) throw Error(ErrorCode::dimension_mismatch, "target from a different scenario");
    if (t.mode() != p.mode()) throw Error(ErrorCode::mode_mismatch, "targets and p use different arithmetic modes");
    if (!is_independence_vector(t, tol))
      throw Error(ErrorCode::not_independence_vector, t.to_string() + " is not an independence vector");
  }

  const int n = s.n();
  if (n <= kEnumerationCapBits && targets.size() == (std::size_t{1} << n)) {
    auto m = membership(p, Family::classical);
    if (m.inside) {
      const auto lambda = m.dense_weights(targets.size(), p.mode());
      // targets listed by ascending epsilon, or descending as in the usual
      // (1,1;1), (1,0;0), (0,1;0), (0,0;0) presentation
      for (bool descending : {false, true}) {
        CommonCauseDecomposition d;
        for (std::size_t k = 0; k < targets.size(); ++k) {
          const std::uint64_t e = descending ? targets.size() - 1 - k : k;
          d.labels.push_back("eps=" + epsilon_label(n, e));
          d.epsilons.push_back(e);
          d.weights.push_back(lambda[e]);
          d.components.push_back(targets[k]);
        }
        auto combined = d.combined();
        bool fits = true;
        for (std::size_t c = 0; c < p.dimension(); ++c) fits = fits && approx_equal(combined[c], p[c], tol);
        if (fits) {
          d.kind = kind_of(d.components);
          d.same_coefficients_as_vertex_expansion = true;
          return d;
        }
      }
    }
  }

  CommonCauseDecomposition d;
  auto fill = [&](const auto& x) {
    for (std::size_t k = 0; k < targets.size(); ++k) {
      d.labels.push_back("k=" + std::to_string(k + 1));
      d.weights.emplace_back(x[k]);
      d.components.push_back(targets[k]);
    }
  };
  const std::size_t dim = p.dimension();
  if (p.mode() == ArithmeticMode::exact) {
    LinearSystem<Rational> sys(dim + 1, targets.size());
    for (std::size_t k = 0; k < targets.size(); ++k) {
      for (std::size_t c = 0; c < dim; ++c) sys.at(c, k) = targets[k][c].rational();
      sys.at(dim, k) = 1;
    }
    for (std::size_t c = 0; c < dim; ++c) sys.b[c] = p[c].rational();
    sys.b[dim] = 1;
    auto r = solve_feasibility(sys);
    if (!r.feasible) throw Error(ErrorCode::lp_infeasible, "infeasible target set for " + p.to_string());
    fill(r.x);
  } else {
    LinearSystem<double> sys(dim + 1, targets.size());
    for (std::size_t k = 0; k < targets.size(); ++k) {
      for (std::size_t c = 0; c < dim; ++c) sys.at(c, k) = targets[k][c].to_double();
      sys.at(dim, k) = 1.0;
    }
    for (std::size_t c = 0; c < dim; ++c) sys.b[c] = p[c].to_double();
    sys.b[dim] = 1.0;
    auto r = solve_feasibility(sys);
    if (!r.feasible) throw Error(ErrorCode::lp_infeasible, "infeasible target set for " + p.to_string());
    fill(r.x);
  }
  d.kind = kind_of(d.components);
  return d;
}

CommonCauseExplanation build_propensity_explanation(const CorrelationVector& p, const std::vector<Scalar>& lambda,
                                                    const std::vector<CorrelationVector>& components,
                                                    const ConditionalRep& rep) {
  const Scenario& s = p.scenario();
  const int n = s.n();
  const auto mode = p.mode();
  const double tol = tolerance_for(mode);
  const std::uint64_t causes = std::uint64_t{1} << n;
  if (lambda.size() != causes || components.size() != causes)
    throw Error(ErrorCode::coefficient_mismatch, "need one coefficient and one component vector per classical vertex");
  require_mode(lambda, mode);
  if (rep.space.mode() != mode) throw Error(ErrorCode::mode_mismatch, "representation and p use different modes");

  auto ns = check_nonsignaling(rep, s, kScreeningTolerance);
  if (!ns.nonsignaling())
    throw Error(ErrorCode::signaling_rejected, "the conditional representation is signaling; it has no property explanation");
  if (!verify_conditional_rep(rep, p, kScreeningTolerance).agrees)
    throw Error(ErrorCode::reconstruction_mismatch, "the conditional representation does not reproduce " + p.to_string());

  Scalar total = Scalar::zero(mode);
  for (const auto& l : lambda) {
    if (l.sign() < 0) throw Error(ErrorCode::not_convex, "negative coefficient");
    total += l;
  }
  if (!approx_equal(total, Scalar::one(mode), tol)) throw Error(ErrorCode::not_convex, "coefficients do not sum to 1");
  std::vector<Scalar> combined(s.dimension(), Scalar::zero(mode));
  for (std::uint64_t e = 0; e < causes; ++e) {
    const auto& comp = components[e];
    if (comp.scenario() != s || comp.mode() != mode)
      throw Error(ErrorCode::coefficient_mismatch, "component vector has the wrong scenario or mode");
    if (!is_independence_vector(comp, tol))
      throw Error(ErrorCode::not_independence_vector, comp.to_string() + " is not an independence vector");
    for (std::size_t c = 0; c < combined.size(); ++c) combined[c] += lambda[e] * comp[c];
  }
  for (std::size_t c = 0; c < combined.size(); ++c)
    if (!approx_equal(combined[c], p[c], tol))
      throw Error(ErrorCode::coefficient_mismatch, "sum of lambda_eps p^eps differs from p at " + s.coordinate_name(c));

  // p(a_sigma) for every setting pattern, read off the representation.
  std::vector<Scalar> setting_weight;
  for (std::uint64_t sigma = 0; sigma < causes; ++sigma) {
    Event pattern = rep.space.all();
    for (int i = 0; i < n; ++i) {
      const auto& a = rep.settings[static_cast<std::size_t>(i)];
      pattern = pattern & (epsilon_bit(n, sigma, i) ? a : a.complement());
    }
    setting_weight.push_back(rep.space.probability(pattern));
  }

  struct Atom {
    std::uint64_t sigma, eps, omega;
  };
  std::vector<std::string> labels;
  std::vector<Scalar> weights;
  std::vector<Atom> atoms;
  const Scalar one = Scalar::one(mode);
  for (std::uint64_t sigma = 0; sigma < causes; ++sigma) {
    if (setting_weight[sigma].sign() <= 0) continue;
    for (std::uint64_t eps = 0; eps < causes; ++eps) {
      if (lambda[eps].sign() <= 0) continue;
      for (std::uint64_t omega = 0; omega < causes; ++omega) {
        Scalar w = setting_weight[sigma] * lambda[eps];
        for (int i = 0; i < n && !w.is_zero(); ++i) {
          Scalar theta = epsilon_bit(n, sigma, i) ? components[eps].single(i) : Scalar::zero(mode);
          w *= epsilon_bit(n, omega, i) ? theta : one - theta;
        }
        if (w.sign() <= 0) continue;
        labels.push_back("sigma=" + epsilon_label(n, sigma) + "|C=" + epsilon_label(n, eps) + "|omega=" +
                         epsilon_label(n, omega));
        weights.push_back(std::move(w));
        atoms.push_back({sigma, eps, omega});
      }
    }
  }

  if (mode == ArithmeticMode::floating) {
    double sum = 0.0;
    for (const auto& w : weights) sum += w.to_double();
    for (auto& w : weights) w = Scalar(w.to_double() / sum);
  }
  CommonCauseExplanation out{FiniteProbSpace(std::move(labels), std::move(weights)), {}, {}, {}, {}, {}, true, {}};
  auto& space = out.space;
  for (int i = 0; i < n; ++i) {
    std::string k = std::to_string(i + 1);
    Event outcome = space.where([&](std::size_t a) { return epsilon_bit(n, atoms[a].omega, i) == 1; });
    Event setting = space.where([&](std::size_t a) { return epsilon_bit(n, atoms[a].sigma, i) == 1; });
    space.define_event("A" + k, outcome);
    space.define_event("a" + k, setting);
    out.outcomes.push_back(std::move(outcome));
    out.settings.push_back(std::move(setting));
  }
  for (std::uint64_t eps = 0; eps < causes; ++eps) {
    if (lambda[eps].sign() <= 0) continue;
    Event cell = space.where([&](std::size_t a) { return atoms[a].eps == eps; });
    std::string label = "C[eps=" + epsilon_label(n, eps) + "]";
    space.define_event(label, cell);
    out.partition.push_back(std::move(cell));
    out.cell_labels.push_back(std::move(label));
    out.cell_vectors.push_back(components[eps]);
    out.deterministic = out.deterministic && is_classical_vertex(components[eps]);
  }

  out.screening = verify_screening(space, out.outcomes, s, out.partition, out.settings);
  if (!verify_conditional_rep(out.as_rep(), p, kScreeningTolerance).agrees)
    throw Error(ErrorCode::internal, "extended space does not reproduce " + p.to_string());
  return out;
}

std::vector<std::vector<Scalar>> cell_values(const ConditionalRep& rep, std::span<const Event> partition) {
  std::vector<std::vector<Scalar>> values;
  for (const auto& cell : partition) {
    std::vector<Scalar> row;
    for (std::size_t i = 0; i < rep.outcomes.size(); ++i)
      row.push_back(rep.space.conditional(rep.outcomes[i], rep.settings[i] & cell));
    values.push_back(std::move(row));
  }
  return values;
}

FiniteProbSpace extract_kolmogorov_from_property(const ConditionalRep& rep, std::span<const Event> partition,
                                                 const Scenario& s, std::span<const std::string> cell_labels,
                                                 const std::optional<std::vector<std::vector<Scalar>>>& declared) {
  const auto mode = rep.space.mode();
  const double tol = tolerance_for(mode);
  auto screening = verify_screening(rep.space, rep.outcomes, s, partition, rep.settings);
  if (!screening.pass)
    throw Error(ErrorCode::screening_failed, "partition does not screen off the conditional correlations "
                                             "without conspiracy");

  auto values = cell_values(rep, partition);
  std::vector<std::vector<bool>> is_one(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    for (std::size_t i = 0; i < values[k].size(); ++i) {
      const double v = values[k][i].to_double();
      const bool one = mode == ArithmeticMode::exact ? values[k][i].is_one() : std::abs(v - 1.0) <= tol;
      const bool zero = mode == ArithmeticMode::exact ? values[k][i].is_zero() : std::abs(v) <= tol;
      if (!one && !zero)
        throw Error(ErrorCode::non_deterministic, "p(A" + std::to_string(i + 1) + "|a" + std::to_string(i + 1) +
                                                      " & C_k) = " + values[k][i].to_string() + " is not 0 or 1");
      is_one[k].push_back(one);
      if (declared) {
        const auto& d = declared->at(k).at(i);
        if (!(d.is_zero() || d.is_one())) throw Error(ErrorCode::non_deterministic, "declared cell value is not 0 or 1");
        if (d.is_one() != one) throw Error(ErrorCode::coefficient_mismatch, "declared cell value disagrees with the space");
      }
    }
  }

  std::vector<std::string> labels;
  std::vector<Scalar> weights;
  for (std::size_t k = 0; k < partition.size(); ++k) {
    labels.push_back(k < cell_labels.size() ? cell_labels[k] : "C" + std::to_string(k + 1));
    weights.push_back(rep.space.probability(partition[k]));
  }
  FiniteProbSpace space(std::move(labels), std::move(weights));
  const auto n = static_cast<std::size_t>(s.n());
  for (std::size_t i = 0; i < n; ++i)
    space.define_event("C" + std::to_string(i + 1), space.where([&](std::size_t k) { return is_one[k][i]; }));

  const auto target = represented_vector(rep, s);
  for (std::size_t i = 0; i < n; ++i) {
    if (!approx_equal(space.probability(space.event("C" + std::to_string(i + 1))), target.single(static_cast<int>(i)), tol))
      throw Error(ErrorCode::reconstruction_mismatch, "p(C" + std::to_string(i + 1) + ") != p_" + std::to_string(i + 1));
  }
  for (std::size_t k = 0; k < s.num_pairs(); ++k) {
    const auto& pr = s.pairs()[k];
    Event both = space.event("C" + std::to_string(pr.first + 1)) & space.event("C" + std::to_string(pr.second + 1));
    if (!approx_equal(space.probability(both), target.pair(k), tol))
      throw Error(ErrorCode::reconstruction_mismatch, "p(C_i & C_j) != p_ij for pair " + s.pair_key(k));
  }
  return space;
}

}  // namespace bellscope
