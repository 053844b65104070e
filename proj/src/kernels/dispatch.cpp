#include <atomic>
#include <cassert>

#include "graver/kernels.hpp"

namespace graver::kernels {

namespace {

bool available(Isa isa) {
    switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#if defined(GRAVER_HAVE_AVX2)
        return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
#else
        return false;
#endif
    case Isa::Neon:
#if defined(GRAVER_HAVE_NEON)
        return true;
#else
        return false;
#endif
    }
    return false;
}

std::atomic<int> g_forced{-1};

}  // namespace

const char* isa_name(Isa isa) {
    switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
    }
    return "unknown";
}

Isa detected_isa() {
    static const Isa best = [] {
        if (available(Isa::Avx2)) return Isa::Avx2;
        if (available(Isa::Neon)) return Isa::Neon;
        return Isa::Scalar;
    }();
    return best;
}

Isa active_isa() {
    const int forced = g_forced.load(std::memory_order_relaxed);
    return forced < 0 ? detected_isa() : static_cast<Isa>(forced);
}

bool force_isa(std::optional<Isa> isa) {
    if (!isa) {
        g_forced.store(-1, std::memory_order_relaxed);
        return true;
    }
    if (!available(*isa)) return false;
    g_forced.store(static_cast<int>(*isa), std::memory_order_relaxed);
    return true;
}

double weighted_squared_deviation(std::span<const std::int32_t> x, std::span<const double> mean,
                                  std::span<const double> weight) {
    assert(x.size() == mean.size() && x.size() == weight.size());
    switch (active_isa()) {
#if defined(GRAVER_HAVE_AVX2)
    case Isa::Avx2: return avx2::weighted_squared_deviation(x, mean, weight);
#endif
#if defined(GRAVER_HAVE_NEON)
    case Isa::Neon: return neon::weighted_squared_deviation(x, mean, weight);
#endif
    default: return scalar::weighted_squared_deviation(x, mean, weight);
    }
}

std::uint64_t and_popcount(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
    assert(a.size() == b.size());
    switch (active_isa()) {
#if defined(GRAVER_HAVE_AVX2)
    case Isa::Avx2: return avx2::and_popcount(a, b);
#endif
#if defined(GRAVER_HAVE_NEON)
    case Isa::Neon: return neon::and_popcount(a, b);
#endif
    default: return scalar::and_popcount(a, b);
    }
}

std::size_t count_at_least(std::span<const double> values, double threshold) {
    switch (active_isa()) {
#if defined(GRAVER_HAVE_AVX2)
    case Isa::Avx2: return avx2::count_at_least(values, threshold);
#endif
#if defined(GRAVER_HAVE_NEON)
    case Isa::Neon: return neon::count_at_least(values, threshold);
#endif
    default: return scalar::count_at_least(values, threshold);
    }
}

}  // namespace graver::kernels
