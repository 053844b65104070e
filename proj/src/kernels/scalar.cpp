#include <bit>

#include "graver/kernels.hpp"

namespace graver::kernels::scalar {

double weighted_squared_deviation(std::span<const std::int32_t> x, std::span<const double> mean,
                                  std::span<const double> weight) {
    const std::size_t n = x.size();
    const std::size_t blocked = n / 4 * 4;
    double lane[4] = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < blocked; i += 4) {
        for (std::size_t k = 0; k < 4; ++k) {
            const double d = static_cast<double>(x[i + k]) - mean[i + k];
            const double sq = d * d;
            lane[k] = lane[k] + sq * weight[i + k];
        }
    }
    double total = (lane[0] + lane[1]) + (lane[2] + lane[3]);
    for (std::size_t i = blocked; i < n; ++i) {
        const double d = static_cast<double>(x[i]) - mean[i];
        const double sq = d * d;
        total = total + sq * weight[i];
    }
    return total;
}

std::uint64_t and_popcount(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < a.size(); ++i) total += static_cast<std::uint64_t>(std::popcount(a[i] & b[i]));
    return total;
}

std::size_t count_at_least(std::span<const double> values, double threshold) {
    std::size_t count = 0;
    for (double v : values) count += (v >= threshold) ? 1 : 0;
    return count;
}

}  // namespace graver::kernels::scalar
