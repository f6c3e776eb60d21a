#pragma once

// Test-only reference implementations, kept independent of the library code
// paths they check.

#include <cstdint>
#include <vector>

#include "stepup/graph.hpp"

namespace oracle {

// delta by literal definition: scan bit positions downward for the highest
// disagreement (never via XOR bit length)
inline std::int64_t delta_scan(std::uint64_t x, std::uint64_t y) {
    for (int i = 63; i >= 0; --i) {
        if (((x >> i) & 1u) != ((y >> i) & 1u)) return i + 1;
    }
    return 0;
}

// connectivity of an induced subset by BFS
inline bool induced_connected(const stepup::Graph& g, const std::vector<int>& subset) {
    if (subset.empty()) return false;
    std::vector<int> stack{subset[0]};
    std::vector<char> in(static_cast<std::size_t>(g.vertex_count()), 0);
    std::vector<char> seen(static_cast<std::size_t>(g.vertex_count()), 0);
    for (int v : subset) in[static_cast<std::size_t>(v)] = 1;
    seen[static_cast<std::size_t>(subset[0])] = 1;
    std::size_t visited = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : g.neighbors(v)) {
            if (in[static_cast<std::size_t>(w)] && !seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                ++visited;
                stack.push_back(w);
            }
        }
    }
    return visited == subset.size();
}

}  // namespace oracle
