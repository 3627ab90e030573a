#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace ramalab {

// Stateless 64-bit finalizer (the splitmix64 output stage). Good enough to
// decorrelate structured inputs like (seed, N, d, index) tuples.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v) {
    return mix64(h ^ (v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2)));
}

// Independent per-task stream seed from a master seed and a task coordinate.
// Every random draw in a run is reproducible from these values alone.
inline std::uint64_t derive_stream_seed(std::uint64_t master_seed,
                                        std::uint64_t family_code,
                                        std::uint64_t n_vertices,
                                        std::uint64_t degree,
                                        std::uint64_t sample_index) {
    std::uint64_t h = mix64(master_seed);
    h = hash_combine(h, family_code);
    h = hash_combine(h, n_vertices);
    h = hash_combine(h, degree);
    h = hash_combine(h, sample_index);
    return h;
}

using Rng = std::mt19937_64;

// Uniform integer in [0, bound), free of modulo bias.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
        const std::uint64_t x = rng();
        if (x >= threshold) return x % bound;
    }
}

// Fisher-Yates; uniform over all n! orderings.
template <typename T>
void shuffle_uniform(std::vector<T>& values, Rng& rng) {
    for (std::size_t i = values.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(uniform_below(rng, i));
        std::swap(values[i - 1], values[j]);
    }
}

}  // namespace ramalab
