#pragma once

#include <cstdint>

namespace spikenum {

// SplitMix64 (Steele, Lea & Flood; the java.util.SplittableRandom finalizer).
// Chosen over std::mt19937 because the output sequence is fully specified
// here, so sweep reports are reproducible across implementations.
//
// Sweep splitting rule: trial t draws from SplitMix64 seeded with
// (sweep_seed XOR t). Trials therefore never share state and any
// serial/parallel execution order produces identical reports.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next()
    {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Unbiased uniform draw from [0, bound) via rejection.
    std::uint64_t next_below(std::uint64_t bound)
    {
        if (bound == 0) {
            return 0;
        }
        const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
        for (;;) {
            const std::uint64_t r = next();
            if (r >= threshold) {
                return r % bound;
            }
        }
    }

    static constexpr const char* kName = "splitmix64";

private:
    std::uint64_t state_;
};

}  // namespace spikenum
