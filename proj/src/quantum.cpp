#include "bellscope/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "bellscope/error.hpp"

namespace bellscope {

namespace {

void require_dim(std::size_t a, std::size_t b) {
  if (a != b)
    throw Error(ErrorCode::dimension_mismatch, "dimension " + std::to_string(a) + " does not match " + std::to_string(b));
}

double clip_probability(double v, const char* what) {
  if (v < -kQuantumTolerance || v > 1.0 + kQuantumTolerance)
    throw Error(ErrorCode::out_of_range, std::string(what) + " " + std::to_string(v) + " outside [0,1]");
  return std::clamp(v, 0.0, 1.0);
}

double real_part(cdouble z, const char* what) {
  if (std::abs(z.imag()) > kQuantumTolerance)
    throw Error(ErrorCode::internal, std::string(what) + " has imaginary part " + std::to_string(z.imag()));
  return z.real();
}

double norm3(const Direction& a) { return std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]); }

void require_unit(const Direction& a) {
  const double n = norm3(a);
  if (std::abs(n - 1.0) > kQuantumTolerance)
    throw Error(ErrorCode::not_unit, "direction has length " + std::to_string(n));
}

CorrelationVector float_vector(const Scenario& s, const std::vector<double>& values) {
  std::vector<Scalar> entries;
  entries.reserve(values.size());
  for (double v : values) entries.emplace_back(clip_probability(v, "probability"));
  return CorrelationVector(s, std::move(entries));
}

}  // namespace

DensityOperator DensityOperator::make(ComplexMatrix rho) {
  if (!rho.is_hermitian(kQuantumTolerance)) throw Error(ErrorCode::not_density_operator, "density operator is not Hermitian");
  const auto ev = hermitian_eigenvalues(rho);
  if (!ev.empty() && ev.front() < -kQuantumTolerance)
    throw Error(ErrorCode::not_density_operator, "density operator has eigenvalue " + std::to_string(ev.front()));
  const cdouble tr = rho.trace();
  if (std::abs(tr - cdouble(1.0)) > kQuantumTolerance)
    throw Error(ErrorCode::not_density_operator, "density operator trace is " + std::to_string(tr.real()));
  return DensityOperator(std::move(rho));
}

DensityOperator DensityOperator::pure(std::span<const cdouble> psi) { return make(ComplexMatrix::outer(psi)); }

ProjectionEvent ProjectionEvent::make(ComplexMatrix p) {
  if (!p.is_projection(kQuantumTolerance)) throw Error(ErrorCode::not_projection, "matrix is not an orthogonal projection");
  return ProjectionEvent(std::move(p));
}

double trace_prob(const DensityOperator& rho, const ProjectionEvent& p) {
  require_dim(rho.dim(), p.dim());
  return clip_probability(real_part(trace_product(rho.matrix(), p.matrix()), "Tr(rho P)"), "Tr(rho P)");
}

bool commute(const ComplexMatrix& a, const ComplexMatrix& b, double tol) { return commutator(a, b).max_abs() <= tol; }

ProjectionEvent meet_projection(const ProjectionEvent& p, const ProjectionEvent& q) {
  require_dim(p.dim(), q.dim());
  if (commute(p.matrix(), q.matrix())) {
    ComplexMatrix pq = p.matrix() * q.matrix();
    // symmetrize away rounding so the result is Hermitian to working precision
    pq = 0.5 * (pq + pq.adjoint());
    return ProjectionEvent::make(std::move(pq));
  }
  const std::size_t d = p.dim();
  const ComplexMatrix h = 2.0 * ComplexMatrix::identity(d) - p.matrix() - q.matrix();
  ComplexMatrix out(d);
  for (const auto& v : hermitian_kernel(h, kMeetThreshold)) out += ComplexMatrix::outer(v);
  return ProjectionEvent::make(std::move(out));
}

DensityOperator singlet_state() {
  ComplexMatrix rho = ComplexMatrix::identity(4);
  for (int k = 1; k <= 3; ++k) rho -= pauli(k).kron(pauli(k));
  rho *= 0.25;
  return DensityOperator::make(std::move(rho));
}

ComplexMatrix spin_observable(const Direction& a) {
  ComplexMatrix m(2);
  for (int k = 0; k < 3; ++k) m += a[static_cast<std::size_t>(k)] * pauli(k + 1);
  return m;
}

ProjectionEvent spin_projection(const Direction& a, Wing wing) {
  require_unit(a);
  const ComplexMatrix up = 0.5 * (ComplexMatrix::identity(2) + spin_observable(a));
  const ComplexMatrix one = ComplexMatrix::identity(2);
  return ProjectionEvent::make(wing == Wing::left ? up.kron(one) : one.kron(up));
}

double angle_between(const Direction& a, const Direction& b) {
  const double dot = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
  const Direction cross{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
  return std::atan2(norm3(cross), dot);
}

double ch_value(const std::array<double, 4>& pairs, double p1, double p3) {
  // pair order (1,3), (1,4), (2,3), (2,4)
  return pairs[0] + pairs[2] + pairs[1] - pairs[3] - p1 - p3;
}

EprResult epr_correlation_vector(const Direction& a1, const Direction& a2, const Direction& b3, const Direction& b4) {
  for (const auto* d : {&a1, &a2, &b3, &b4}) require_unit(*d);
  const Scenario s = Scenario::clauser_horne();
  const DensityOperator rho = singlet_state();
  const std::array<ProjectionEvent, 4> proj{spin_projection(a1, Wing::left), spin_projection(a2, Wing::left),
                                            spin_projection(b3, Wing::right), spin_projection(b4, Wing::right)};
  EprResult r{{a1, a2, b3, b4}, CorrelationVector(s, std::vector<Scalar>(8, Scalar(0.0))), {}, {}, {}, {}, 0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < 4; ++i) r.singles_trace[i] = trace_prob(rho, proj[i]);
  std::vector<double> values(4, 0.5);
  for (std::size_t slot = 0; slot < s.num_pairs(); ++slot) {
    const auto [i, j] = s.pairs()[slot];
    const auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
    r.angles[slot] = angle_between(r.directions[ui], r.directions[uj]);
    const double half = std::sin(r.angles[slot] / 2.0);
    r.closed_form[slot] = 0.5 * half * half;
    r.trace_form[slot] = trace_prob(rho, meet_projection(proj[ui], proj[uj]));
    r.max_discrepancy = std::max(r.max_discrepancy, std::abs(r.closed_form[slot] - r.trace_form[slot]));
    values.push_back(r.closed_form[slot]);
  }
  for (double single : r.singles_trace) r.max_discrepancy = std::max(r.max_discrepancy, std::abs(single - 0.5));
  if (r.max_discrepancy > kEprCrossCheckTolerance)
    throw Error(ErrorCode::internal, "closed form and trace evaluation differ by " + std::to_string(r.max_discrepancy));
  r.vector = float_vector(s, values);
  r.ch_closed_form = ch_value(r.closed_form, 0.5, 0.5);
  r.ch_trace = ch_value(r.trace_form, r.singles_trace[0], r.singles_trace[2]);
  return r;
}

std::array<Direction, 4> canonical_epr_directions() {
  const double h = std::numbers::sqrt2 / 2.0;
  return {Direction{0.0, 1.0, 0.0}, Direction{1.0, 0.0, 0.0}, Direction{h, h, 0.0}, Direction{-h, h, 0.0}};
}

QuantumCommonCauseReport quantum_common_cause_check(const DensityOperator& rho, std::span<const ProjectionEvent> events,
                                                    const Scenario& s, std::span<const ProjectionEvent> partition) {
  if (events.size() != static_cast<std::size_t>(s.n()))
    throw Error(ErrorCode::dimension_mismatch, "expected " + std::to_string(s.n()) + " events");
  if (partition.empty()) throw Error(ErrorCode::not_a_partition, "partition is empty");
  const std::size_t d = rho.dim();
  for (const auto& e : events) require_dim(d, e.dim());
  ComplexMatrix sum(d);
  for (std::size_t k = 0; k < partition.size(); ++k) {
    require_dim(d, partition[k].dim());
    sum += partition[k].matrix();
    for (std::size_t l = k + 1; l < partition.size(); ++l)
      if ((partition[k].matrix() * partition[l].matrix()).max_abs() > kQuantumTolerance)
        throw Error(ErrorCode::not_a_partition, "cells " + std::to_string(k + 1) + " and " + std::to_string(l + 1) + " overlap");
  }
  if ((sum - ComplexMatrix::identity(d)).max_abs() > kQuantumTolerance)
    throw Error(ErrorCode::not_a_partition, "cells do not add up to the identity");

  std::vector<ProjectionEvent> meets;
  for (const auto& [i, j] : s.pairs())
    meets.push_back(meet_projection(events[static_cast<std::size_t>(i)], events[static_cast<std::size_t>(j)]));

  const std::size_t n = events.size();
  QuantumCommonCauseReport r{{}, {}, {}, true, true, CorrelationVector(s, std::vector<Scalar>(s.dimension(), Scalar(0.0))),
                             CorrelationVector(s, std::vector<Scalar>(s.dimension(), Scalar(0.0))), 0.0,
                             kQuantumScreeningTolerance};
  std::vector<double> direct(s.dimension()), reconstructed(s.dimension(), 0.0);
  for (std::size_t i = 0; i < n; ++i) direct[i] = trace_prob(rho, events[i]);
  for (std::size_t slot = 0; slot < meets.size(); ++slot) direct[n + slot] = trace_prob(rho, meets[slot]);

  for (const auto& [i, j] : s.pairs()) r.pairs.push_back(QuantumPairCheck{IndexPair{i, j}, {}, 0.0, true, true});

  for (const auto& cell : partition) {
    const ComplexMatrix& c = cell.matrix();
    const double weight = trace_prob(rho, cell);
    if (weight <= kQuantumTolerance) throw Error(ErrorCode::zero_probability, "partition cell has zero weight");
    const DensityOperator rho_k = DensityOperator::make((1.0 / weight) * (c * rho.matrix() * c));
    std::vector<double> singles(n);
    for (std::size_t i = 0; i < n; ++i) {
      singles[i] = trace_prob(rho_k, events[i]);
      reconstructed[i] += weight * singles[i];
    }
    for (std::size_t slot = 0; slot < meets.size(); ++slot) {
      auto& check = r.pairs[slot];
      const auto ui = static_cast<std::size_t>(check.pair.first), uj = static_cast<std::size_t>(check.pair.second);
      const double residual = trace_prob(rho_k, meets[slot]) - singles[ui] * singles[uj];
      check.residuals.push_back(residual);
      check.max_residual = std::max(check.max_residual, std::abs(residual));
      check.commuting = check.commuting && commute(c, events[ui].matrix()) && commute(c, events[uj].matrix());
      reconstructed[n + slot] += weight * singles[ui] * singles[uj];
    }
    r.weights.push_back(weight);
    r.cell_singles.push_back(std::move(singles));
  }
  for (auto& check : r.pairs) {
    check.screened = check.max_residual <= kQuantumScreeningTolerance;
    r.screening_pass = r.screening_pass && check.screened;
    r.commuting = r.commuting && check.commuting;
  }
  for (std::size_t k = 0; k < direct.size(); ++k) r.max_gap = std::max(r.max_gap, std::abs(direct[k] - reconstructed[k]));
  r.direct = float_vector(s, direct);
  r.reconstructed = float_vector(s, reconstructed);
  return r;
}

ComplexMatrix bell_operator(const BellOperatorSet& ops) {
  const std::size_t d = ops.a1.dim();
  for (const auto* m : {&ops.a2, &ops.b1, &ops.b2}) require_dim(d, m->dim());
  for (const auto* m : {&ops.a1, &ops.a2, &ops.b1, &ops.b2}) {
    if (!m->is_hermitian(kQuantumTolerance)) throw Error(ErrorCode::norm_violation, "Bell operator input is not Hermitian");
    const double norm = spectral_norm(*m, kQuantumTolerance);
    if (norm > 1.0 + kQuantumTolerance)
      throw Error(ErrorCode::norm_violation, "operator norm " + std::to_string(norm) + " exceeds 1");
  }
  for (const auto* a : {&ops.a1, &ops.a2})
    for (const auto* b : {&ops.b1, &ops.b2})
      if (!commute(*a, *b)) throw Error(ErrorCode::commutation_violation, "an A operator does not commute with a B operator");
  return 0.5 * (ops.a1 * (ops.b1 + ops.b2) + ops.a2 * (ops.b1 - ops.b2));
}

double bell_operator_value(const DensityOperator& rho, const BellOperatorSet& ops) {
  const ComplexMatrix r = bell_operator(ops);
  require_dim(rho.dim(), r.dim());
  return real_part(trace_product(rho.matrix(), r), "Bell operator value");
}

BellOperatorSet spin_bell_operators(const Direction& a1, const Direction& a2, const Direction& b1, const Direction& b2) {
  for (const auto* d : {&a1, &a2, &b1, &b2}) require_unit(*d);
  const ComplexMatrix one = ComplexMatrix::identity(2);
  return {spin_observable(a1).kron(one), spin_observable(a2).kron(one), one.kron(spin_observable(b1)),
          one.kron(spin_observable(b2))};
}

std::array<Direction, 4> canonical_chsh_directions() {
  // the singlet gives E(a,b) = -a.b, so the B directions are reversed
  const double h = std::numbers::sqrt2 / 2.0;
  return {Direction{0.0, 0.0, 1.0}, Direction{1.0, 0.0, 0.0}, Direction{-h, 0.0, -h}, Direction{h, 0.0, -h}};
}

std::vector<cdouble> random_state_vector(Sampler& rng, std::size_t dim) {
  std::vector<cdouble> psi(dim);
  double norm = 0.0;
  while (norm == 0.0) {
    norm = 0.0;
    for (auto& z : psi) {
      z = cdouble(rng.normal(), rng.normal());
      norm += std::norm(z);
    }
  }
  norm = std::sqrt(norm);
  for (auto& z : psi) z /= norm;
  return psi;
}

DensityOperator random_pure_state(Sampler& rng, std::size_t dim) {
  const auto psi = random_state_vector(rng, dim);
  return DensityOperator::pure(psi);
}

DensityOperator random_product_state(Sampler& rng) {
  const auto u = random_state_vector(rng, 2);
  const auto v = random_state_vector(rng, 2);
  return DensityOperator::make(ComplexMatrix::outer(u).kron(ComplexMatrix::outer(v)));
}

ComplexMatrix random_hermitian_contraction(Sampler& rng, std::size_t dim) {
  ComplexMatrix h(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    h(i, i) = rng.normal();
    for (std::size_t j = i + 1; j < dim; ++j) {
      h(i, j) = cdouble(rng.normal(), rng.normal());
      h(j, i) = std::conj(h(i, j));
    }
  }
  const auto ev = hermitian_eigenvalues(h);
  const double scale = std::max(std::abs(ev.front()), std::abs(ev.back()));
  if (scale > 0.0) h *= 1.0 / scale;
  return h;
}

}  // namespace bellscope
