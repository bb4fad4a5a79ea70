#include "gsrww/kernels.hpp"

#include <limits>

#if defined(__x86_64__) && defined(__AVX2__)
#include <immintrin.h>
#define GSRWW_HAVE_AVX2 1
#else
#define GSRWW_HAVE_AVX2 0
#endif

namespace gsrww::kernels::avx2 {

#if GSRWW_HAVE_AVX2

namespace {

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d pair = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

inline double hmax(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d pair = _mm_max_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_max_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

double range_sum(const double* p, std::size_t len) {
    __m256d a0 = _mm256_setzero_pd();
    __m256d a1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= len; i += 8) {
        a0 = _mm256_add_pd(a0, _mm256_loadu_pd(p + i));
        a1 = _mm256_add_pd(a1, _mm256_loadu_pd(p + i + 4));
    }
    for (; i + 4 <= len; i += 4) a0 = _mm256_add_pd(a0, _mm256_loadu_pd(p + i));
    double acc = hsum(_mm256_add_pd(a0, a1));
    for (; i < len; ++i) acc += p[i];
    return acc;
}

}  // namespace

bool compiled() noexcept { return true; }

void block_sums(std::span<const double> values, std::span<const std::size_t> bounds,
                std::span<double> out) {
    for (std::size_t b = 0; b + 1 < bounds.size(); ++b)
        out[b] = range_sum(values.data() + bounds[b], bounds[b + 1] - bounds[b]);
}

double grid_pair_sup(std::span<const double> prefix, std::span<const std::size_t> widths,
                     std::span<const double> weights) {
    const double neg_inf = -std::numeric_limits<double>::infinity();
    __m256d best4 = _mm256_set1_pd(neg_inf);
    double best = neg_inf;
    const double* p = prefix.data();
    for (std::size_t w = 0; w < widths.size(); ++w) {
        const std::size_t width = widths[w];
        if (width >= prefix.size()) continue;
        const std::size_t count = prefix.size() - width;
        const double c = weights[w];
        const __m256d c4 = _mm256_set1_pd(c);
        std::size_t j = 0;
        for (; j + 4 <= count; j += 4) {
            const __m256d diff = _mm256_sub_pd(_mm256_loadu_pd(p + j + width), _mm256_loadu_pd(p + j));
            best4 = _mm256_max_pd(best4, _mm256_mul_pd(diff, c4));
        }
        for (; j < count; ++j) {
            const double v = (p[j + width] - p[j]) * c;
            if (v > best) best = v;
        }
    }
    const double vec_best = hmax(best4);
    return vec_best > best ? vec_best : best;
}

SquareMoments square_moments(std::span<const double> x) {
    __m256d s2 = _mm256_setzero_pd();
    __m256d s4 = _mm256_setzero_pd();
    const double* p = x.data();
    std::size_t i = 0;
    for (; i + 4 <= x.size(); i += 4) {
        const __m256d v = _mm256_loadu_pd(p + i);
        const __m256d sq = _mm256_mul_pd(v, v);
        s2 = _mm256_add_pd(s2, sq);
        s4 = _mm256_add_pd(s4, _mm256_mul_pd(sq, sq));
    }
    SquareMoments m{hsum(s2), hsum(s4)};
    for (; i < x.size(); ++i) {
        const double sq = p[i] * p[i];
        m.sum_sq += sq;
        m.sum_quad += sq * sq;
    }
    return m;
}

#else

bool compiled() noexcept { return false; }

void block_sums(std::span<const double> values, std::span<const std::size_t> bounds,
                std::span<double> out) {
    scalar::block_sums(values, bounds, out);
}

double grid_pair_sup(std::span<const double> prefix, std::span<const std::size_t> widths,
                     std::span<const double> weights) {
    return scalar::grid_pair_sup(prefix, widths, weights);
}

SquareMoments square_moments(std::span<const double> x) { return scalar::square_moments(x); }

#endif

}  // namespace gsrww::kernels::avx2
