#ifndef RADICAL_TESTS_SUPPORT_HPP
#define RADICAL_TESTS_SUPPORT_HPP

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "seq.hpp"

namespace testsupport {

// Stateless hash-based sign supplier (splitmix64): the same (seed, index)
// always yields the same sign, so streams are safe to re-read.
inline std::function<int(std::uint64_t)> seeded_signs(std::uint64_t seed) {
    return [seed](std::uint64_t m) {
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (m + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return (z & 1) ? 1 : -1;
    };
}

// Same stream with a_0 pinned to the given sign.
inline std::function<int(std::uint64_t)> seeded_signs_pinned(
    std::uint64_t seed, int first) {
    auto base = seeded_signs(seed);
    return [base, first](std::uint64_t m) { return m == 0 ? first : base(m); };
}

inline std::vector<int> random_signs(std::mt19937& rng, std::size_t len) {
    std::vector<int> v(len);
    for (auto& s : v) s = (rng() & 1) ? 1 : -1;
    return v;
}

inline rad::SignSequence random_description(std::mt19937& rng) {
    std::uniform_int_distribution<int> kind(0, 2);
    std::uniform_int_distribution<std::size_t> plen(0, 8);
    std::uniform_int_distribution<std::size_t> len(1, 12);
    switch (kind(rng)) {
    case 0: return rad::SignSequence::finite(random_signs(rng, len(rng)));
    case 1: return rad::SignSequence::purely_periodic(random_signs(rng, len(rng)));
    default:
        return rad::SignSequence::eventually_periodic(
            random_signs(rng, plen(rng)), random_signs(rng, len(rng)));
    }
}

// All sign tuples of the given length, as bitmask-driven vectors.
inline std::vector<int> mask_signs(std::uint64_t mask, unsigned n) {
    std::vector<int> v(n);
    for (unsigned i = 0; i < n; ++i) v[i] = (mask >> i) & 1 ? -1 : 1;
    return v;
}

} // namespace testsupport

#endif
