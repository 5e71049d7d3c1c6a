#pragma once

#include <cstdint>
#include <random>

#include "bellscope/scenario.hpp"

namespace bellscope {

/// Seeded generator for the sampling harnesses. Draws are reproducible for a
/// given seed on a given standard library.
class Sampler {
 public:
  static constexpr std::uint64_t kDefaultSeed = 20190411;

  explicit Sampler(std::uint64_t seed = kDefaultSeed) : seed_(seed), rng_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::mt19937_64& engine() { return rng_; }

  /// k / d with d uniform in [1, max_denominator] and k uniform in [0, d].
  Rational unit_rational(int max_denominator = 24);
  double unit_double();
  double normal();
  int uniform_int(int lo, int hi);

  /// Every coordinate drawn independently from the unit interval.
  CorrelationVector cube_vector(const Scenario& s, ArithmeticMode mode = ArithmeticMode::exact);
  /// Random convex combination of a few vertices of the family (exact).
  CorrelationVector hull_vector(const Scenario& s, Family family, int terms = 3);

 private:
  std::uint64_t seed_;
  std::mt19937_64 rng_;
};

}  // namespace bellscope
