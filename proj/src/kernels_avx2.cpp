// AVX2/FMA kernel variants.  Compiled with per-function target attributes so
// the translation unit stays runnable on baseline hardware; the dispatcher in
// kernels.cpp only routes here after a cpuid check.

#include "ldgflow/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#define LDGFLOW_HAVE_X86 1
#else
#define LDGFLOW_HAVE_X86 0
#endif

namespace ldgflow::kernels::detail {

#if LDGFLOW_HAVE_X86

bool avx2_available() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

namespace {

__attribute__((target("avx2,fma"))) inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d sh = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

__attribute__((target("avx2,fma"))) inline double row_dot(const double* row, const double* x,
                                                          int n) {
    __m256d acc = _mm256_setzero_pd();
    int c = 0;
    for (; c + 4 <= n; c += 4)
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(row + c), _mm256_loadu_pd(x + c), acc);
    double tail = 0.0;
    for (; c < n; ++c) tail += row[c] * x[c];
    return hsum(acc) + tail;
}

} // namespace

__attribute__((target("avx2,fma"))) void matvec_avx2(const double* a, const double* x, int m,
                                                     int n, double* y) {
    for (int r = 0; r < m; ++r) y[r] = row_dot(a + static_cast<std::size_t>(r) * n, x, n);
}

__attribute__((target("avx2,fma"))) void matvec_acc_avx2(const double* a, const double* x, int m,
                                                         int n, double s, double* y) {
    for (int r = 0; r < m; ++r)
        y[r] += s * row_dot(a + static_cast<std::size_t>(r) * n, x, n);
}

__attribute__((target("avx2,fma"))) double dot_avx2(const double* a, const double* b, int n) {
    return row_dot(a, b, n);
}

__attribute__((target("avx2,fma"))) double dot3_avx2(const double* w, const double* a,
                                                     const double* b, int n) {
    __m256d acc = _mm256_setzero_pd();
    int i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d ab = _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), ab, acc);
    }
    double tail = 0.0;
    for (; i < n; ++i) tail += w[i] * a[i] * b[i];
    return hsum(acc) + tail;
}

#else // non-x86: dispatcher never selects these, keep linkable fallbacks

bool avx2_available() { return false; }

void matvec_avx2(const double* a, const double* x, int m, int n, double* y) {
    matvec_scalar(a, x, m, n, y);
}

void matvec_acc_avx2(const double* a, const double* x, int m, int n, double s, double* y) {
    matvec_acc_scalar(a, x, m, n, s, y);
}

double dot_avx2(const double* a, const double* b, int n) { return dot_scalar(a, b, n); }

double dot3_avx2(const double* w, const double* a, const double* b, int n) {
    return dot3_scalar(w, a, b, n);
}

#endif

} // namespace ldgflow::kernels::detail
