#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace powsum {

/// Seeded generator with platform-independent bounded draws
/// (std::uniform_int_distribution is implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, n); n > 0.
    std::uint64_t below(std::uint64_t n);

    /// Uniform in [lo, hi].
    std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }

    /// `count` distinct values from [0, n), sorted ascending (Floyd's algorithm).
    std::vector<std::uint64_t> sample_distinct(std::uint64_t n, std::uint64_t count);

    /// Uniform in [0, 1).
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

} // namespace powsum
