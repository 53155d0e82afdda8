// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>

namespace hqnn::rng {

// All randomness in the toolkit flows through SplitMix64 streams whose seeds
// are derived with `derive`. There is no global RNG state: every run, fold,
// epoch, batch and sampled expectation owns a seed computed from its parent
// seed plus a salt, so results are independent of thread schedule.

/// 64-bit finalizer of SplitMix64 (Steele, Lea & Flood, OOPSLA 2014).
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// SplitMix64 generator: output k is mix64(seed + (k+1)*golden_gamma), i.e.
/// a pure hash of a counter, which makes streams cheap to fork by reseeding.
class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

    constexpr std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix64(state_);
    }

    /// Uniform double in [0, 1) with 53 random mantissa bits.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double next_uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    /// Box-Muller transform, one variate per call (the sine branch is
    /// discarded so a stream position maps to exactly one output).
    double next_gaussian() {
        const double u1 = 1.0 - next_double(); // (0, 1]
        const double u2 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    /// Uniform integer in [0, bound) by rejection-free scaling (bound <= 2^32
    /// keeps the modulo bias below 2^-32, negligible for shuffling).
    std::uint64_t next_below(std::uint64_t bound) { return next() % bound; }

private:
    std::uint64_t state_;
};

/// FNV-1a hash of a string, used to turn tags into seed salts.
constexpr std::uint64_t fnv1a(std::string_view text) {
    std::uint64_t h = 1469598103934665603ULL;
    for (const char c : text) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    return h;
}

/// Child seed derivation: derive(base, salt) = mix64(base XOR mix64(salt + gamma)).
constexpr std::uint64_t derive(std::uint64_t base, std::uint64_t salt) {
    return mix64(base ^ mix64(salt + 0x9E3779B97F4A7C15ULL));
}

constexpr std::uint64_t derive(std::uint64_t base, std::string_view tag) {
    return derive(base, fnv1a(tag));
}

constexpr std::uint64_t derive(std::uint64_t base, std::string_view tag, std::uint64_t counter) {
    return derive(derive(base, tag), counter);
}

constexpr std::uint64_t derive(std::uint64_t base, std::string_view tag, std::uint64_t a,
                               std::uint64_t b) {
    return derive(derive(base, tag, a), b);
}

} // namespace hqnn::rng
