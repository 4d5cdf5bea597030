#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace compnoma {

using Rng = std::mt19937_64;

// splitmix64 finalizer; a bijective mixer of 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Counter-based seed derivation: the result depends only on the words, never
// on the order in which work items are executed.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> words) {
    std::uint64_t h = mix64(master);
    for (std::uint64_t w : words) h = mix64(h ^ mix64(w + 0x632be59bd9b4e019ULL));
    return h;
}

// Named sub-streams inside one Monte Carlo iteration.
enum class Stream : std::uint64_t {
    base_stations = 1,
    users = 2,
    clustering = 3,
    shadowing = 4,
    fading = 5,
};

inline Rng make_stream(std::uint64_t iteration_seed, Stream s) {
    return Rng(derive_seed(iteration_seed, {static_cast<std::uint64_t>(s)}));
}

}  // namespace compnoma
