// AVX2 variants of the reduction kernels. This translation unit is compiled
// with -mavx2; callers reach it only through avx2_backend(), which returns
// nullptr unless the CPU reports AVX2 support at runtime.

#include "degen/kernels.hpp"

#if defined(__AVX2__) && (defined(__x86_64__) || defined(_M_X64))

#include <immintrin.h>

#include <cmath>

namespace degen::kernels {

namespace {

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline double hmax(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d m = _mm_max_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_max_sd(m, _mm_unpackhi_pd(m, m)));
}

inline __m256d abs_pd(__m256d v) {
    const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    return _mm256_and_pd(v, mask);
}

double avx2_dot(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4)
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    double s = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

double avx2_sumsq(const double* a, std::size_t n) { return avx2_dot(a, a, n); }

double avx2_sub_sumsq(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc = _mm256_fmadd_pd(d, d, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

double avx2_diff_sumsq(const double* a, std::size_t n) {
    if (n < 2) return 0.0;
    // adjacent differences as offset-by-one unaligned loads
    return avx2_sub_sumsq(a + 1, a, n - 1);
}

double avx2_max_abs(const double* a, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_max_pd(acc, abs_pd(_mm256_loadu_pd(a + i)));
    double m = hmax(acc);
    for (; i < n; ++i) m = std::max(m, std::fabs(a[i]));
    return m;
}

double avx2_max_abs_diff(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc = _mm256_max_pd(acc, abs_pd(d));
    }
    double m = hmax(acc);
    for (; i < n; ++i) m = std::max(m, std::fabs(a[i] - b[i]));
    return m;
}

double avx2_max_abs_adjdiff(const double* a, std::size_t n) {
    if (n < 2) return 0.0;
    return avx2_max_abs_diff(a + 1, a, n - 1);
}

const Backend kAvx2 = {
    "avx2",         avx2_dot,          avx2_sumsq,
    avx2_sub_sumsq, avx2_diff_sumsq,   avx2_max_abs,
    avx2_max_abs_diff, avx2_max_abs_adjdiff,
};

} // namespace

const Backend* avx2_backend() {
    static const Backend* backend = []() -> const Backend* {
        __builtin_cpu_init();
        return __builtin_cpu_supports("avx2") ? &kAvx2 : nullptr;
    }();
    return backend;
}

} // namespace degen::kernels

#endif // __AVX2__ && x86_64
