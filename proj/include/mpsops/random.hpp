#pragma once

#include <cstdint>

namespace mpsops {

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Counter-based stream: the n-th draw depends only on (seed, stream, n),
/// never on how many draws were taken before.
class CounterRng {
public:
    explicit constexpr CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
        : key_(mix64(seed ^ mix64(stream + 0x632be59bd9b4e019ULL))) {}

    constexpr std::uint64_t bits(std::uint64_t n) const { return mix64(key_ + mix64(n)); }

    /// Uniform in [0, 1) with 53 random bits.
    constexpr double uniform(std::uint64_t n) const {
        return static_cast<double>(bits(n) >> 11) * 0x1.0p-53;
    }

    /// Sequential interface over the same stream.
    std::uint64_t next_bits() { return bits(counter_++); }
    double next() { return uniform(counter_++); }
    std::uint64_t counter() const { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

} // namespace mpsops
