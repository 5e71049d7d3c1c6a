#include "bellscope/kernels/kernels.hpp"

#if defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>
#define BELLSCOPE_HAVE_AVX2 1
#else
#define BELLSCOPE_HAVE_AVX2 0
#endif

namespace bellscope::kernels::avx2 {

#if BELLSCOPE_HAVE_AVX2

bool compiled() { return true; }

namespace {

double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d shuf = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, shuf));
}

// (a.re + i a.im)(b.re + i b.im) for two interleaved complex lanes.
__m256d cmul(__m256d a, __m256d b) {
  __m256d a_re = _mm256_movedup_pd(a);
  __m256d a_im = _mm256_permute_pd(a, 0xF);
  __m256d b_swap = _mm256_permute_pd(b, 0x5);
  return _mm256_fmaddsub_pd(a_re, b, _mm256_mul_pd(a_im, b_swap));
}

}  // namespace

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d a = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d yv = _mm256_loadu_pd(y + i);
    yv = _mm256_fmadd_pd(a, _mm256_loadu_pd(x + i), yv);
    _mm256_storeu_pd(y + i, yv);
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

double dot(const double* x, const double* y, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc);
  double total = hsum(acc);
  for (; i < n; ++i) total += x[i] * y[i];
  return total;
}

void caxpy(cdouble alpha, const cdouble* x, cdouble* y, std::size_t n) {
  const auto* xd = reinterpret_cast<const double*>(x);
  auto* yd = reinterpret_cast<double*>(y);
  const __m256d a = _mm256_setr_pd(alpha.real(), alpha.imag(), alpha.real(), alpha.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d yv = _mm256_loadu_pd(yd + 2 * i);
    yv = _mm256_add_pd(yv, cmul(a, _mm256_loadu_pd(xd + 2 * i)));
    _mm256_storeu_pd(yd + 2 * i, yv);
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

cdouble cdot(const cdouble* x, const cdouble* y, std::size_t n) {
  const auto* xd = reinterpret_cast<const double*>(x);
  const auto* yd = reinterpret_cast<const double*>(y);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) acc = _mm256_add_pd(acc, cmul(_mm256_loadu_pd(xd + 2 * i), _mm256_loadu_pd(yd + 2 * i)));
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double re = lanes[0] + lanes[2];
  double im = lanes[1] + lanes[3];
  for (; i < n; ++i) {
    re += x[i].real() * y[i].real() - x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() + x[i].imag() * y[i].real();
  }
  return {re, im};
}

#else

bool compiled() { return false; }
void axpy(double alpha, const double* x, double* y, std::size_t n) { scalar::axpy(alpha, x, y, n); }
double dot(const double* x, const double* y, std::size_t n) { return scalar::dot(x, y, n); }
void caxpy(cdouble alpha, const cdouble* x, cdouble* y, std::size_t n) { scalar::caxpy(alpha, x, y, n); }
cdouble cdot(const cdouble* x, const cdouble* y, std::size_t n) { return scalar::cdot(x, y, n); }

#endif

}  // namespace bellscope::kernels::avx2
