#include "bellscope/sampling.hpp"

namespace bellscope {

Rational Sampler::unit_rational(int max_denominator) {
  std::uniform_int_distribution<int> den_dist(1, max_denominator);
  int den = den_dist(rng_);
  std::uniform_int_distribution<int> num_dist(0, den);
  Rational q(num_dist(rng_), den);
  q.canonicalize();
  return q;
}

double Sampler::unit_double() { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_); }

double Sampler::normal() { return std::normal_distribution<double>(0.0, 1.0)(rng_); }

int Sampler::uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

CorrelationVector Sampler::cube_vector(const Scenario& s, ArithmeticMode mode) {
  std::vector<Scalar> entries;
  entries.reserve(s.dimension());
  for (std::size_t c = 0; c < s.dimension(); ++c) {
    if (mode == ArithmeticMode::exact) entries.emplace_back(unit_rational());
    else entries.emplace_back(unit_double());
  }
  return CorrelationVector(s, std::move(entries));
}

CorrelationVector Sampler::hull_vector(const Scenario& s, Family family, int terms) {
  auto vertices = enumerate_vertices(s, family);
  std::uniform_int_distribution<std::size_t> pick(0, vertices.size() - 1);
  std::vector<Rational> raw(static_cast<std::size_t>(terms));
  Rational total = 0;
  for (auto& w : raw) {
    w = Rational(uniform_int(1, 12));
    total += w;
  }
  std::vector<Rational> acc(s.dimension(), Rational(0));
  for (const auto& w : raw) {
    const auto& v = vertices[pick(rng_)];
    for (std::size_t c = 0; c < acc.size(); ++c)
      if (v.bits()[c]) acc[c] += w / total;
  }
  std::vector<Scalar> entries;
  for (auto& a : acc) entries.emplace_back(a);
  return CorrelationVector(s, std::move(entries));
}

}  // namespace bellscope
