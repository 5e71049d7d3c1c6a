#include <atomic>
#include <cassert>
#include <cstdlib>
#include <cstring>

#include "bellscope/kernels/kernels.hpp"

namespace bellscope::kernels {

std::string_view to_string(SimdLevel level) {
  return level == SimdLevel::avx2 ? "avx2" : "scalar";
}

SimdLevel detected_level() {
#if defined(__x86_64__) || defined(__i386__)
  static const SimdLevel level = [] {
    __builtin_cpu_init();
    if (avx2::compiled() && __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
      return SimdLevel::avx2;
    return SimdLevel::scalar;
  }();
  return level;
#else
  return SimdLevel::scalar;
#endif
}

namespace {

SimdLevel initial_level() {
  const char* env = std::getenv("BELLSCOPE_SIMD");
  if (env && std::strcmp(env, "scalar") == 0) return SimdLevel::scalar;
  return detected_level();
}

std::atomic<SimdLevel>& level_slot() {
  static std::atomic<SimdLevel> level{initial_level()};
  return level;
}

}  // namespace

SimdLevel active_level() { return level_slot().load(std::memory_order_relaxed); }

void set_active_level(SimdLevel level) {
  if (level == SimdLevel::avx2 && detected_level() != SimdLevel::avx2) level = SimdLevel::scalar;
  level_slot().store(level, std::memory_order_relaxed);
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  if (active_level() == SimdLevel::avx2) avx2::axpy(alpha, x.data(), y.data(), x.size());
  else scalar::axpy(alpha, x.data(), y.data(), x.size());
}

double dot(std::span<const double> x, std::span<const double> y) {
  assert(x.size() == y.size());
  if (active_level() == SimdLevel::avx2) return avx2::dot(x.data(), y.data(), x.size());
  return scalar::dot(x.data(), y.data(), x.size());
}

void caxpy(cdouble alpha, std::span<const cdouble> x, std::span<cdouble> y) {
  assert(x.size() == y.size());
  if (active_level() == SimdLevel::avx2) avx2::caxpy(alpha, x.data(), y.data(), x.size());
  else scalar::caxpy(alpha, x.data(), y.data(), x.size());
}

cdouble cdot(std::span<const cdouble> x, std::span<const cdouble> y) {
  assert(x.size() == y.size());
  if (active_level() == SimdLevel::avx2) return avx2::cdot(x.data(), y.data(), x.size());
  return scalar::cdot(x.data(), y.data(), x.size());
}

}  // namespace bellscope::kernels
