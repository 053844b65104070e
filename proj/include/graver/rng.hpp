#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace graver {

/// Seedable random source shared by the generator and the chains.
///
/// Only the raw 64-bit engine output comes from the standard library; bounded
/// integers and shuffles are derived here so that a seed reproduces the same
/// stream on every standard library implementation.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [lo, hi], inclusive. Requires lo <= hi.
    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        if (span == 0) return static_cast<std::int64_t>(next());
        // Reject the low residue so the remaining range is a multiple of span.
        const std::uint64_t threshold = (std::uint64_t{0} - span) % span;
        std::uint64_t r = next();
        while (r < threshold) r = next();
        return lo + static_cast<std::int64_t>(r % span);
    }

    std::size_t index(std::size_t size) { return static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(size) - 1)); }

    bool coin() { return (next() >> 63) != 0; }

    /// Uniform real in [0, 1).
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    template <typename T>
    void shuffle(std::span<T> items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::swap(items[i - 1], items[index(i)]);
        }
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace graver
