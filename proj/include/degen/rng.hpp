#pragma once

#include <cmath>
#include <cstdint>

namespace degen {

/// 64-bit linear congruential generator,
///   x <- 6364136223846793005 * x + 1442695040888963407  (mod 2^64),
/// with uniforms taken from the top 53 bits. The recurrence and the
/// derivations below are fixed so that every implementation of the sweeps
/// reproduces the same probe set from the same seed.
class Lcg64 {
public:
    explicit Lcg64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
        return state_;
    }

    /// Uniform on [0, 1).
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1].
    double next_unit_open() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    /// Uniform on [-1, 1).
    double next_symmetric() { return 2.0 * next_unit() - 1.0; }

    /// Standard normal via Box-Muller; consumes two uniforms per call.
    double next_normal() {
        const double u1 = next_unit_open();
        const double u2 = next_unit();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

private:
    std::uint64_t state_;
};

} // namespace degen
