#pragma once

#include <cstdint>
#include <random>

namespace mra {

// Seeded generator producing the same stream on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : g_(seed ^ 0x9e3779b97f4a7c15ULL) {}
    // Uniform-ish integer in [lo, hi].
    long range(long lo, long hi) { return lo + static_cast<long>(g_() % static_cast<std::uint64_t>(hi - lo + 1)); }
    std::uint64_t next() { return g_(); }
    bool coin() { return (g_() & 1U) != 0; }

private:
    std::mt19937_64 g_;
};

}  // namespace mra
