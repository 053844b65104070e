// Built with -mavx2 -mpopcnt; only called after a runtime CPU check.

#include <immintrin.h>

#include <bit>

#include "graver/kernels.hpp"

namespace graver::kernels::avx2 {

double weighted_squared_deviation(std::span<const std::int32_t> x, std::span<const double> mean,
                                  std::span<const double> weight) {
    const std::size_t n = x.size();
    const std::size_t blocked = n / 4 * 4;
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t i = 0; i < blocked; i += 4) {
        const __m128i xi = _mm_loadu_si128(reinterpret_cast<const __m128i*>(x.data() + i));
        const __m256d d = _mm256_sub_pd(_mm256_cvtepi32_pd(xi), _mm256_loadu_pd(mean.data() + i));
        const __m256d sq = _mm256_mul_pd(d, d);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(sq, _mm256_loadu_pd(weight.data() + i)));
    }
    alignas(32) double lane[4];
    _mm256_store_pd(lane, acc);
    double total = (lane[0] + lane[1]) + (lane[2] + lane[3]);
    for (std::size_t i = blocked; i < n; ++i) {
        const double d = static_cast<double>(x[i]) - mean[i];
        const double sq = d * d;
        total = total + sq * weight[i];
    }
    return total;
}

std::uint64_t and_popcount(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
    // Nibble-lookup popcount (Mula), byte counts folded with SAD.
    const __m256i lookup = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,  //
                                            0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
    const __m256i low_mask = _mm256_set1_epi8(0x0f);
    const std::size_t n = a.size();
    const std::size_t blocked = n / 4 * 4;
    __m256i acc = _mm256_setzero_si256();
    for (std::size_t i = 0; i < blocked; i += 4) {
        const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a.data() + i));
        const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b.data() + i));
        const __m256i v = _mm256_and_si256(va, vb);
        const __m256i lo = _mm256_and_si256(v, low_mask);
        const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
        const __m256i bytes = _mm256_add_epi8(_mm256_shuffle_epi8(lookup, lo), _mm256_shuffle_epi8(lookup, hi));
        acc = _mm256_add_epi64(acc, _mm256_sad_epu8(bytes, _mm256_setzero_si256()));
    }
    alignas(32) std::uint64_t lane[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lane), acc);
    std::uint64_t total = lane[0] + lane[1] + lane[2] + lane[3];
    for (std::size_t i = blocked; i < n; ++i) total += static_cast<std::uint64_t>(std::popcount(a[i] & b[i]));
    return total;
}

std::size_t count_at_least(std::span<const double> values, double threshold) {
    const std::size_t n = values.size();
    const std::size_t blocked = n / 4 * 4;
    const __m256d t = _mm256_set1_pd(threshold);
    std::size_t count = 0;
    for (std::size_t i = 0; i < blocked; i += 4) {
        const __m256d ge = _mm256_cmp_pd(_mm256_loadu_pd(values.data() + i), t, _CMP_GE_OQ);
        count += static_cast<std::size_t>(std::popcount(static_cast<unsigned>(_mm256_movemask_pd(ge))));
    }
    for (std::size_t i = blocked; i < n; ++i) count += (values[i] >= threshold) ? 1 : 0;
    return count;
}

}  // namespace graver::kernels::avx2
