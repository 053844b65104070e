// AArch64 only; NEON is part of the base ISA there.

#include <arm_neon.h>

#include <bit>

#include "graver/kernels.hpp"

namespace graver::kernels::neon {

double weighted_squared_deviation(std::span<const std::int32_t> x, std::span<const double> mean,
                                  std::span<const double> weight) {
    const std::size_t n = x.size();
    const std::size_t blocked = n / 4 * 4;
    // acc01 holds lanes 0,1 and acc23 lanes 2,3 of the four-lane scheme.
    float64x2_t acc01 = vdupq_n_f64(0.0);
    float64x2_t acc23 = vdupq_n_f64(0.0);
    for (std::size_t i = 0; i < blocked; i += 4) {
        const int32x4_t xi = vld1q_s32(x.data() + i);
        const float64x2_t x01 = vcvtq_f64_s64(vmovl_s32(vget_low_s32(xi)));
        const float64x2_t x23 = vcvtq_f64_s64(vmovl_s32(vget_high_s32(xi)));
        const float64x2_t d01 = vsubq_f64(x01, vld1q_f64(mean.data() + i));
        const float64x2_t d23 = vsubq_f64(x23, vld1q_f64(mean.data() + i + 2));
        acc01 = vaddq_f64(acc01, vmulq_f64(vmulq_f64(d01, d01), vld1q_f64(weight.data() + i)));
        acc23 = vaddq_f64(acc23, vmulq_f64(vmulq_f64(d23, d23), vld1q_f64(weight.data() + i + 2)));
    }
    double total = (vgetq_lane_f64(acc01, 0) + vgetq_lane_f64(acc01, 1)) +
                   (vgetq_lane_f64(acc23, 0) + vgetq_lane_f64(acc23, 1));
    for (std::size_t i = blocked; i < n; ++i) {
        const double d = static_cast<double>(x[i]) - mean[i];
        const double sq = d * d;
        total = total + sq * weight[i];
    }
    return total;
}

std::uint64_t and_popcount(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
    const std::size_t n = a.size();
    const std::size_t blocked = n / 2 * 2;
    uint64x2_t acc = vdupq_n_u64(0);
    for (std::size_t i = 0; i < blocked; i += 2) {
        const uint64x2_t v = vandq_u64(vld1q_u64(a.data() + i), vld1q_u64(b.data() + i));
        const uint8x16_t bytes = vcntq_u8(vreinterpretq_u8_u64(v));
        acc = vaddq_u64(acc, vpaddlq_u32(vpaddlq_u16(vpaddlq_u8(bytes))));
    }
    std::uint64_t total = vgetq_lane_u64(acc, 0) + vgetq_lane_u64(acc, 1);
    for (std::size_t i = blocked; i < n; ++i) total += static_cast<std::uint64_t>(std::popcount(a[i] & b[i]));
    return total;
}

std::size_t count_at_least(std::span<const double> values, double threshold) {
    const std::size_t n = values.size();
    const std::size_t blocked = n / 2 * 2;
    const float64x2_t t = vdupq_n_f64(threshold);
    uint64x2_t acc = vdupq_n_u64(0);
    for (std::size_t i = 0; i < blocked; i += 2) {
        // All-ones lanes where v >= t; shift down to 0/1.
        acc = vaddq_u64(acc, vshrq_n_u64(vcgeq_f64(vld1q_f64(values.data() + i), t), 63));
    }
    std::size_t count = static_cast<std::size_t>(vgetq_lane_u64(acc, 0) + vgetq_lane_u64(acc, 1));
    for (std::size_t i = blocked; i < n; ++i) count += (values[i] >= threshold) ? 1 : 0;
    return count;
}

}  // namespace graver::kernels::neon
