#pragma once

#include <cstdint>
#include <random>

namespace vdwmix {

/// Seeded generator with platform-independent output: mt19937_64 has a
/// standard-mandated bit sequence, and the uniform mappings below avoid the
/// implementation-defined std distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform integer in [lo, hi], rejection sampled (no modulo bias).
    std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi) {
        const std::uint64_t span = hi - lo + 1;
        const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % span;
        std::uint64_t x;
        do {
            x = gen_();
        } while (x >= limit);
        return lo + x % span;
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace vdwmix
