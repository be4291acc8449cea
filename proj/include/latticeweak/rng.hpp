#pragma once

#include <cstdint>

namespace latticeweak {

// Counter-based RNG: splitmix64 of (seed, counter).  Stateless per draw, so
// streams are reproducible and freely parallelizable across sample indices.
class CounterRng {
  public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
        : base_(mix(seed ^ (0x9e3779b97f4a7c15ull * (stream + 1)))) {}

    std::uint64_t next_u64() { return mix(base_ + 0x9e3779b97f4a7c15ull * ++counter_); }

    // Uniform in [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ull;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

  private:
    std::uint64_t base_;
    std::uint64_t counter_ = 0;
};

}  // namespace latticeweak
