#pragma once

// Dense inner-loop kernels used by the float simplex and the complex matrix
// engine. Each kernel has a portable scalar reference and an AVX2+FMA variant;
// the variant is picked once at startup from CPUID. BELLSCOPE_SIMD=scalar
// forces the reference path.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace bellscope::kernels {

using cdouble = std::complex<double>;

enum class SimdLevel { scalar, avx2 };

std::string_view to_string(SimdLevel level);

/// Best level supported by this CPU and build.
SimdLevel detected_level();
/// Level used by the dispatching entry points below.
SimdLevel active_level();
/// Overrides dispatch (tests use this to pin a path). Requesting an
/// unsupported level falls back to scalar.
void set_active_level(SimdLevel level);

// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y);
double dot(std::span<const double> x, std::span<const double> y);
// y += alpha * x over complex values
void caxpy(cdouble alpha, std::span<const cdouble> x, std::span<cdouble> y);
// sum_k x_k * y_k (no conjugation)
cdouble cdot(std::span<const cdouble> x, std::span<const cdouble> y);

namespace scalar {
void axpy(double alpha, const double* x, double* y, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
void caxpy(cdouble alpha, const cdouble* x, cdouble* y, std::size_t n);
cdouble cdot(const cdouble* x, const cdouble* y, std::size_t n);
}  // namespace scalar

namespace avx2 {
bool compiled();
void axpy(double alpha, const double* x, double* y, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
void caxpy(cdouble alpha, const cdouble* x, cdouble* y, std::size_t n);
cdouble cdot(const cdouble* x, const cdouble* y, std::size_t n);
}  // namespace avx2

}  // namespace bellscope::kernels
