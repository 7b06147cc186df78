#include "condan/kernels.hpp"

#include <atomic>
#include <cmath>

#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
#define CONDAN_X86_DISPATCH 1
#include <immintrin.h>
#elif defined(__ARM_NEON)
#define CONDAN_NEON 1
#include <arm_neon.h>
#endif

namespace condan::kern {

static std::atomic<bool> g_force_scalar{false};

void set_force_scalar(bool v) { g_force_scalar.store(v, std::memory_order_relaxed); }

// ---- scalar reference kernels ----

static double dot_scalar(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

static double sum_scalar(const double* a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i];
  return s;
}

static double sumsq_scalar(const double* a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * a[i];
  return s;
}

static double abs_sum_scalar(const double* a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::fabs(a[i]);
  return s;
}

static double max_abs_scalar(const double* a, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double v = std::fabs(a[i]);
    if (v > m) m = v;
  }
  return m;
}

static void axpy_scalar(double s, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += s * x[i];
}

#if defined(CONDAN_X86_DISPATCH)

static bool detect_avx2() {
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

static bool g_have_avx2 = detect_avx2();

bool simd_available() { return g_have_avx2; }

__attribute__((target("avx2,fma"))) static double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

__attribute__((target("avx2,fma"))) static double dot_avx2(const double* a, const double* b,
                                                           std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

__attribute__((target("avx2,fma"))) static double sum_avx2(const double* a, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(a + i));
  double s = hsum(acc);
  for (; i < n; ++i) s += a[i];
  return s;
}

__attribute__((target("avx2,fma"))) static double sumsq_avx2(const double* a, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_loadu_pd(a + i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += a[i] * a[i];
  return s;
}

__attribute__((target("avx2,fma"))) static double abs_sum_avx2(const double* a, std::size_t n) {
  const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_and_pd(mask, _mm256_loadu_pd(a + i)));
  double s = hsum(acc);
  for (; i < n; ++i) s += std::fabs(a[i]);
  return s;
}

__attribute__((target("avx2,fma"))) static double max_abs_avx2(const double* a, std::size_t n) {
  const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_max_pd(acc, _mm256_and_pd(mask, _mm256_loadu_pd(a + i)));
  __m128d lo = _mm256_castpd256_pd128(acc);
  __m128d hi = _mm256_extractf128_pd(acc, 1);
  __m128d mx = _mm_max_pd(lo, hi);
  double m = _mm_cvtsd_f64(_mm_max_sd(mx, _mm_unpackhi_pd(mx, mx)));
  for (; i < n; ++i) {
    double v = std::fabs(a[i]);
    if (v > m) m = v;
  }
  return m;
}

__attribute__((target("avx2,fma"))) static void axpy_avx2(double s, const double* x, double* y,
                                                          std::size_t n) {
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(vs, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) y[i] += s * x[i];
}

static inline bool use_simd() {
  return g_have_avx2 && !g_force_scalar.load(std::memory_order_relaxed);
}

double dot(const double* a, const double* b, std::size_t n) {
  return use_simd() ? dot_avx2(a, b, n) : dot_scalar(a, b, n);
}
double sum(const double* a, std::size_t n) {
  return use_simd() ? sum_avx2(a, n) : sum_scalar(a, n);
}
double sumsq(const double* a, std::size_t n) {
  return use_simd() ? sumsq_avx2(a, n) : sumsq_scalar(a, n);
}
double abs_sum(const double* a, std::size_t n) {
  return use_simd() ? abs_sum_avx2(a, n) : abs_sum_scalar(a, n);
}
double max_abs(const double* a, std::size_t n) {
  return use_simd() ? max_abs_avx2(a, n) : max_abs_scalar(a, n);
}
void axpy(double s, const double* x, double* y, std::size_t n) {
  if (use_simd())
    axpy_avx2(s, x, y, n);
  else
    axpy_scalar(s, x, y, n);
}

#elif defined(CONDAN_NEON)

bool simd_available() { return true; }

static inline bool use_simd() { return !g_force_scalar.load(std::memory_order_relaxed); }

double dot(const double* a, const double* b, std::size_t n) {
  if (!use_simd()) return dot_scalar(a, b, n);
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) acc = vfmaq_f64(acc, vld1q_f64(a + i), vld1q_f64(b + i));
  double s = vaddvq_f64(acc);
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}
double sum(const double* a, std::size_t n) {
  if (!use_simd()) return sum_scalar(a, n);
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) acc = vaddq_f64(acc, vld1q_f64(a + i));
  double s = vaddvq_f64(acc);
  for (; i < n; ++i) s += a[i];
  return s;
}
double sumsq(const double* a, std::size_t n) {
  if (!use_simd()) return sumsq_scalar(a, n);
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t v = vld1q_f64(a + i);
    acc = vfmaq_f64(acc, v, v);
  }
  double s = vaddvq_f64(acc);
  for (; i < n; ++i) s += a[i] * a[i];
  return s;
}
double abs_sum(const double* a, std::size_t n) {
  if (!use_simd()) return abs_sum_scalar(a, n);
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) acc = vaddq_f64(acc, vabsq_f64(vld1q_f64(a + i)));
  double s = vaddvq_f64(acc);
  for (; i < n; ++i) s += std::fabs(a[i]);
  return s;
}
double max_abs(const double* a, std::size_t n) {
  if (!use_simd()) return max_abs_scalar(a, n);
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) acc = vmaxq_f64(acc, vabsq_f64(vld1q_f64(a + i)));
  double m = vmaxvq_f64(acc);
  for (; i < n; ++i) m = std::max(m, std::fabs(a[i]));
  return m;
}
void axpy(double s, const double* x, double* y, std::size_t n) {
  if (!use_simd()) return axpy_scalar(s, x, y, n);
  float64x2_t vs = vdupq_n_f64(s);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), vs, vld1q_f64(x + i)));
  for (; i < n; ++i) y[i] += s * x[i];
}

#else

bool simd_available() { return false; }

double dot(const double* a, const double* b, std::size_t n) { return dot_scalar(a, b, n); }
double sum(const double* a, std::size_t n) { return sum_scalar(a, n); }
double sumsq(const double* a, std::size_t n) { return sumsq_scalar(a, n); }
double abs_sum(const double* a, std::size_t n) { return abs_sum_scalar(a, n); }
double max_abs(const double* a, std::size_t n) { return max_abs_scalar(a, n); }
void axpy(double s, const double* x, double* y, std::size_t n) { axpy_scalar(s, x, y, n); }

#endif

}  // namespace condan::kern
