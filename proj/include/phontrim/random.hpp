#pragma once

#include <concepts>
#include <cstdint>
#include <limits>
#include <random>

namespace phontrim {

// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Seed for Monte Carlo iteration `index` under `base_seed`. Streams for
// different indices are independent of execution order.
constexpr std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t index) noexcept {
    return mix64(mix64(base_seed) ^ mix64(index ^ 0xD1B54A32D192ED03ULL));
}

template <typename G>
concept Uniform64Generator = std::uniform_random_bit_generator<G> &&
    G::min() == 0 && G::max() == std::numeric_limits<std::uint64_t>::max();

// Uniform integer in [0, bound). std::uniform_int_distribution is not
// specified bit-for-bit across standard libraries, so this uses plain
// rejection sampling on the raw 64-bit output.
template <Uniform64Generator G>
std::uint64_t uniform_below(G& gen, std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    for (;;) {
        const std::uint64_t x = gen();
        if (x < limit) return x % bound;
    }
}

using SeededStream = std::mt19937_64;

inline SeededStream make_stream(std::uint64_t base_seed, std::uint64_t index) {
    return SeededStream(derive_seed(base_seed, index));
}

}  // namespace phontrim
