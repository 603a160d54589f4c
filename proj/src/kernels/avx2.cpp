// Compiled with -mavx2 -mfma; only reached after a cpuid check.

#include "ectop/kernels.hpp"

#include <immintrin.h>

namespace ectop::kernels {
namespace {

void min_avx2(const double* a, const double* b, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        // _mm256_min_pd(x, y) returns y when x < y is false, which matches
        // the scalar `b < a ? b : a` with operands ordered (b, a).
        const __m256d va = _mm256_loadu_pd(a + i);
        const __m256d vb = _mm256_loadu_pd(b + i);
        _mm256_storeu_pd(out + i, _mm256_min_pd(vb, va));
    }
    for (; i < n; ++i) out[i] = b[i] < a[i] ? b[i] : a[i];
}

void max_avx2(const double* a, const double* b, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d va = _mm256_loadu_pd(a + i);
        const __m256d vb = _mm256_loadu_pd(b + i);
        _mm256_storeu_pd(out + i, _mm256_max_pd(vb, va));
    }
    for (; i < n; ++i) out[i] = b[i] > a[i] ? b[i] : a[i];
}

void mask_avx2(const double* v, std::size_t n, double level, bool superlevel, std::uint8_t* out) {
    const __m256d vl = _mm256_set1_pd(level);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d x = _mm256_loadu_pd(v + i);
        const __m256d c = superlevel ? _mm256_cmp_pd(x, vl, _CMP_GE_OQ) : _mm256_cmp_pd(x, vl, _CMP_LE_OQ);
        const int bits = _mm256_movemask_pd(c);
        out[i] = bits & 1;
        out[i + 1] = (bits >> 1) & 1;
        out[i + 2] = (bits >> 2) & 1;
        out[i + 3] = (bits >> 3) & 1;
    }
    for (; i < n; ++i) out[i] = (superlevel ? v[i] >= level : v[i] <= level) ? 1 : 0;
}

void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vy = _mm256_loadu_pd(y + i);
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy));
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
    }
    if (i + 4 <= n) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        i += 4;
    }
    const __m256d acc = _mm256_add_pd(acc0, acc1);
    const __m128d lo = _mm256_castpd256_pd128(acc);
    const __m128d hi = _mm256_extractf128_pd(acc, 1);
    const __m128d pair = _mm_add_pd(lo, hi);
    double s = _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

extern const KernelTable kAvx2Table;
const KernelTable kAvx2Table{"avx2", min_avx2, max_avx2, mask_avx2, axpy_avx2, dot_avx2};

}  // namespace ectop::kernels
