#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

namespace stepup {

// All randomized generators in this library draw through these helpers rather
// than <random> distributions, whose output is implementation-defined. The
// mt19937_64 stream itself is pinned by the standard, so files regenerated
// from (params, seed) are byte-identical across toolchains.
using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
    // rejection sampling on the top range to avoid modulo bias
    if (n == 0) return 0;
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
        v = rng();
    } while (v >= limit);
    return v % n;
}

inline bool coin(Rng& rng) { return (rng() & 1u) != 0; }

// uniform in [0, 1) with 53 random bits
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
}

template <typename T>
void shuffle_vec(std::vector<T>& v, Rng& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(uniform_below(rng, i));
        std::swap(v[i - 1], v[j]);
    }
}

// k distinct values from [0, n), returned sorted
inline std::vector<int> random_subset(Rng& rng, int n, int k) {
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i;
    for (int i = 0; i < k; ++i) {
        int j = i + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n - i)));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    std::sort(pool.begin(), pool.end());
    return pool;
}

}  // namespace stepup
