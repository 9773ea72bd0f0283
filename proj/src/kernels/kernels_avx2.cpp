#include "fairmsr/kernels.hpp"

#if defined(FAIRMSR_HAVE_AVX2)

#include <immintrin.h>

namespace fairmsr::kernels::detail {

namespace {

inline double hsum256(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d swapped = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, swapped));
}

} // namespace

double sqdist_avx2(const double* a, const double* b, std::size_t d) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= d; i += 4) {
        const __m256d va = _mm256_loadu_pd(a + i);
        const __m256d vb = _mm256_loadu_pd(b + i);
        const __m256d diff = _mm256_sub_pd(va, vb);
        acc = _mm256_fmadd_pd(diff, diff, acc);
    }
    double total = hsum256(acc);
    for (; i < d; ++i) {
        const double diff = a[i] - b[i];
        total += diff * diff;
    }
    return total;
}

void sqdist_batch_avx2(const double* pts, std::size_t n, std::size_t d,
                       const double* q, double* out) {
    for (std::size_t i = 0; i < n; ++i)
        out[i] = sqdist_avx2(pts + i * d, q, d);
}

std::size_t farthest_avx2(const double* pts, std::size_t n, std::size_t d,
                          const double* q, double* max_sq) {
    std::size_t best = 0;
    double best_sq = sqdist_avx2(pts, q, d);
    for (std::size_t i = 1; i < n; ++i) {
        const double sq = sqdist_avx2(pts + i * d, q, d);
        if (sq > best_sq) {
            best_sq = sq;
            best = i;
        }
    }
    if (max_sq) *max_sq = best_sq;
    return best;
}

} // namespace fairmsr::kernels::detail

#endif // FAIRMSR_HAVE_AVX2
