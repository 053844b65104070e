#pragma once

// Data-parallel inner loops of the statistics layer.
//
// Every kernel has a scalar reference in kernels::scalar and vector variants
// selected at runtime. Floating-point kernels accumulate in four interleaved
// lanes reduced as (l0 + l1) + (l2 + l3) in every variant, so all variants
// return bit-identical results.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>

namespace graver::kernels {

enum class Isa { Scalar, Avx2, Neon };

const char* isa_name(Isa isa);

/// Best instruction set compiled in and supported by this CPU.
Isa detected_isa();

/// Instruction set used by the dispatching entry points below.
Isa active_isa();

/// Pins dispatch to `isa` (nullopt restores detection). Returns false and
/// leaves dispatch unchanged when `isa` is unavailable here.
bool force_isa(std::optional<Isa> isa);

/// Sum over i of (x[i] - mean[i])^2 * weight[i]. Spans must have equal length.
double weighted_squared_deviation(std::span<const std::int32_t> x, std::span<const double> mean,
                                  std::span<const double> weight);

/// Sum over i of popcount(a[i] & b[i]). Spans must have equal length.
std::uint64_t and_popcount(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);

/// Number of values >= threshold (NaN never counts).
std::size_t count_at_least(std::span<const double> values, double threshold);

namespace scalar {
double weighted_squared_deviation(std::span<const std::int32_t> x, std::span<const double> mean,
                                  std::span<const double> weight);
std::uint64_t and_popcount(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);
std::size_t count_at_least(std::span<const double> values, double threshold);
}  // namespace scalar

#if defined(GRAVER_HAVE_AVX2)
namespace avx2 {
double weighted_squared_deviation(std::span<const std::int32_t> x, std::span<const double> mean,
                                  std::span<const double> weight);
std::uint64_t and_popcount(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);
std::size_t count_at_least(std::span<const double> values, double threshold);
}  // namespace avx2
#endif

#if defined(GRAVER_HAVE_NEON)
namespace neon {
double weighted_squared_deviation(std::span<const std::int32_t> x, std::span<const double> mean,
                                  std::span<const double> weight);
std::uint64_t and_popcount(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);
std::size_t count_at_least(std::span<const double> values, double threshold);
}  // namespace neon
#endif

}  // namespace graver::kernels
