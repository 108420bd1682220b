#pragma once

#include <cstdint>
#include <random>

namespace chunglu {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Maps (seed, stream) to a well-mixed 64-bit value so that derived streams
// (per trial, per grid cell, ...) are independent and order-free.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t s = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    return splitmix64(s);
}

// Seedable wrapper around mt19937_64 with bit-derived uniform doubles, so
// realizations are reproducible across standard-library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(mix_seed(seed, 0)) {}
    Rng(std::uint64_t seed, std::uint64_t stream) : gen_(mix_seed(seed, stream)) {}

    std::uint64_t next_u64() { return gen_(); }

    // uniform in [0, 1)
    double next_double() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // uniform in (0, 1], safe as a log() argument
    double next_open() { return 1.0 - next_double(); }

    // uniform integer in [0, bound); bound >= 1
    std::uint64_t next_below(std::uint64_t bound) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(gen_()) * bound) >> 64);
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace chunglu
