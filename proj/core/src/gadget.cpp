#include "stepup/gadget.hpp"

#include <algorithm>
#include <stdexcept>

namespace stepup {

namespace {

// ESU-style extension: subsets stay connected and contain their minimum
// vertex as the root, so each connected set is produced exactly once.
void extend(const Graph& g, std::vector<int>& sub, std::vector<int>& ext, int root, int size,
            std::vector<std::vector<int>>& out) {
    if (static_cast<int>(sub.size()) == size) {
        auto sorted = sub;
        std::sort(sorted.begin(), sorted.end());
        out.push_back(std::move(sorted));
        return;
    }
    std::vector<int> ext_copy = ext;
    while (!ext_copy.empty()) {
        int w = ext_copy.back();
        ext_copy.pop_back();
        std::vector<int> next_ext = ext_copy;
        for (int u : g.neighbors(w)) {
            if (u <= root) continue;
            if (std::find(sub.begin(), sub.end(), u) != sub.end()) continue;
            if (std::find(ext_copy.begin(), ext_copy.end(), u) != ext_copy.end()) continue;
            // exclusive neighborhood: u must not neighbor the current subset
            bool fresh = true;
            for (int v : sub) {
                if (g.has_edge(u, v)) {
                    fresh = false;
                    break;
                }
            }
            if (fresh) next_ext.push_back(u);
        }
        sub.push_back(w);
        extend(g, sub, next_ext, root, size, out);
        sub.pop_back();
    }
}

}  // namespace

std::vector<std::vector<int>> connected_subsets(const Graph& g, int size) {
    std::vector<std::vector<int>> out;
    if (size <= 0) return out;
    if (size == 1) {
        for (int v = 0; v < g.vertex_count(); ++v) out.push_back({v});
        return out;
    }
    for (int v = 0; v < g.vertex_count(); ++v) {
        std::vector<int> sub{v};
        std::vector<int> ext;
        for (int u : g.neighbors(v))
            if (u > v) ext.push_back(u);
        extend(g, sub, ext, v, size, out);
    }
    std::sort(out.begin(), out.end());
    return out;
}

Hypergraph gadget(int k, const Graph& f) {
    if (k < 2) throw std::invalid_argument("gadget: k >= 2 required");
    int M = f.vertex_count();
    if (M < k) throw std::invalid_argument("gadget: |V(F)| >= k required");
    Hypergraph h(M, k);
    auto trees = connected_subsets(f, k - 1);
    for (const auto& s : trees) {
        std::vector<char> in(static_cast<std::size_t>(M), 0);
        for (int v : s) in[static_cast<std::size_t>(v)] = 1;
        for (int w = 0; w < M; ++w) {
            if (in[static_cast<std::size_t>(w)]) continue;
            auto edge = s;
            edge.push_back(w);
            h.add_edge(std::move(edge));
        }
    }
    return h;
}

Hypergraph gadget_family(int k, int n, const Graph& f,
                         const std::vector<std::vector<int>>& copies) {
    Hypergraph h(n, k);
    auto trees = connected_subsets(f, k - 1);
    for (const auto& placement : copies) {
        if (static_cast<int>(placement.size()) != f.vertex_count())
            throw std::invalid_argument("gadget_family: placement arity mismatch");
        std::vector<char> in(placement.size(), 0);
        for (const auto& s : trees) {
            std::fill(in.begin(), in.end(), 0);
            for (int v : s) in[static_cast<std::size_t>(v)] = 1;
            for (std::size_t w = 0; w < placement.size(); ++w) {
                if (in[w]) continue;
                std::vector<int> edge;
                edge.reserve(static_cast<std::size_t>(k));
                for (int v : s) edge.push_back(placement[static_cast<std::size_t>(v)]);
                edge.push_back(placement[w]);
                h.add_edge(std::move(edge));
            }
        }
    }
    return h;
}

}  // namespace stepup
