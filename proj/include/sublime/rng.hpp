#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace sublime {

/// Deterministic random source. Wraps std::mt19937_64 (whose output sequence
/// is pinned by the standard) and derives doubles/bounded ints with explicit
/// arithmetic instead of std::*_distribution, which may differ across
/// standard libraries. Same seed -> same stream on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1), 53-bit resolution.
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform in (0, 1]; never returns zero (NMF-style inits need > 0).
    double next_unit_open() { return 1.0 - next_unit(); }

    /// Uniform integer in [0, n). n must be > 0.
    std::uint64_t bounded(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

private:
    std::mt19937_64 engine_;
};

/// 64-bit FNV-1a. Stable across runs and platforms; used for cache keys and
/// seed derivation, never for security.
inline std::uint64_t fnv1a64(const void* data, std::size_t len) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= bytes[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::uint64_t fnv1a64(std::string_view s) { return fnv1a64(s.data(), s.size()); }

}  // namespace sublime
