#ifndef PESIM_SEEDING_H
#define PESIM_SEEDING_H

#include <cstdint>
#include <initializer_list>
#include <random>

namespace pesim {

/// The splitmix64 finalizer. Bijective on 64-bit words.
constexpr uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Counter-based seed derivation: folds each word into the running hash.
/// The result depends only on the words and their order, never on scheduling.
constexpr uint64_t derive_seed(uint64_t master, std::initializer_list<uint64_t> words) {
    uint64_t h = splitmix64(master);
    for (auto w : words) {
        h = splitmix64(h ^ splitmix64(w + 0x632BE59BD9B4E019ULL));
    }
    return h;
}

constexpr uint64_t realization_seed(uint64_t master, uint64_t realization) {
    return derive_seed(master, {0x5245414CULL, realization});
}

/// Gate seed keyed on (realization seed, time step, layer parity, left site).
constexpr uint64_t gate_seed(uint64_t realization, uint64_t step, uint64_t layer, uint64_t site) {
    return derive_seed(realization, {step, layer, site});
}

using Rng = std::mt19937_64;

}  // namespace pesim

#endif
