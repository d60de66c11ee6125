#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace mvstable {

/// Mixes a seed with a stream index into an independent 64-bit seed (splitmix64 finalizer).
[[nodiscard]] constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Platform-independent random source. The standard distributions are
/// implementation-defined, so the variates are built directly from the
/// 64-bit engine output to keep streams bit-identical across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(derive_seed(seed, 0)) {}

    /// Uniform on the open interval (0, 1).
    double uniform() noexcept {
        // 53 random bits, shifted by half an ulp so 0 is never produced.
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Uniform on (-pi/2, pi/2).
    double uniform_angle() noexcept { return std::numbers::pi * (uniform() - 0.5); }

    /// Standard exponential.
    double exponential() noexcept { return -std::log(uniform()); }

    /// Standard normal (Box-Muller, one variate per call).
    double normal() noexcept {
        const double r = std::sqrt(-2.0 * std::log(uniform()));
        return r * std::cos(2.0 * std::numbers::pi * uniform());
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace mvstable
