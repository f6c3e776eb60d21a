#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "stepup/gadget.hpp"
#include "stepup/rng.hpp"

using namespace stepup;

namespace {

// brute-force gadget: every (k-1)-subset with connected induced subgraph,
// extended by every other vertex
Hypergraph gadget_brute(int k, const Graph& f) {
    int M = f.vertex_count();
    Hypergraph h(M, k);
    std::vector<int> subset;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(subset.size()) == k - 1) {
            if (!oracle::induced_connected(f, subset)) return;
            std::set<int> in(subset.begin(), subset.end());
            for (int w = 0; w < M; ++w) {
                if (in.count(w)) continue;
                auto edge = subset;
                edge.push_back(w);
                h.add_edge(std::move(edge));
            }
            return;
        }
        for (int v = start; v < M; ++v) {
            subset.push_back(v);
            self(self, v + 1);
            subset.pop_back();
        }
    };
    rec(rec, 0);
    return h;
}

Graph random_connected(int n, int extra_edges, Rng& rng) {
    Graph g(n);
    for (int v = 1; v < n; ++v)
        g.add_edge(v, static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(v))));
    int added = 0, guard = 0;
    while (added < extra_edges && guard++ < 200) {
        int u = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n)));
        int v = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n)));
        if (u == v || g.has_edge(u, v)) continue;
        g.add_edge(u, v);
        ++added;
    }
    return g;
}

}  // namespace

TEST_SUITE_BEGIN("gadget");

TEST_CASE("k = 2 gives the complete graph") {
    Graph f(5);
    f.add_edge(0, 1);  // edges of F are irrelevant at k = 2
    auto h = gadget(2, f);
    CHECK(h.edge_count() == 10);
}

TEST_CASE("star and single-edge examples") {
    // star center 0, leaves 1..3: connected pairs are the star edges
    Graph star(4);
    star.add_edge(0, 1);
    star.add_edge(0, 2);
    star.add_edge(0, 3);
    auto h = gadget(3, star);
    CHECK(h.edge_count() == 6);
    CHECK(h.has_edge({0, 1, 2}));
    CHECK(h.has_edge({0, 1, 3}));
    CHECK(h.has_edge({0, 2, 3}));
    // leaves are pairwise disconnected, but appear with the center pairs
    CHECK(h.has_edge({1, 0, 3}));
    CHECK_FALSE(h.has_edge({1, 2, 3}));

    // single edge {0,1} plus isolated 2: only {0,1,2}
    Graph e(3);
    e.add_edge(0, 1);
    auto h2 = gadget(3, e);
    CHECK(h2.edge_count() == 1);
    CHECK(h2.has_edge({0, 1, 2}));

    CHECK_THROWS_AS(gadget(3, Graph(2)), std::invalid_argument);
}

TEST_CASE("connected_subsets equals brute enumeration") {
    Rng rng = make_rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        Graph f = random_connected(7, 3, rng);
        for (int size : {1, 2, 3}) {
            auto fast = connected_subsets(f, size);
            // brute force
            std::vector<std::vector<int>> brute;
            std::vector<int> subset;
            auto rec = [&](auto&& self, int start) -> void {
                if (static_cast<int>(subset.size()) == size) {
                    if (oracle::induced_connected(f, subset)) brute.push_back(subset);
                    return;
                }
                for (int v = start; v < f.vertex_count(); ++v) {
                    subset.push_back(v);
                    self(self, v + 1);
                    subset.pop_back();
                }
            };
            rec(rec, 0);
            std::sort(brute.begin(), brute.end());
            CHECK(fast == brute);
        }
    }
}

TEST_CASE("gadget equals brute force and covers all pairs on connected F") {
    Rng rng = make_rng(23);
    for (int trial = 0; trial < 8; ++trial) {
        int n = 6 + trial % 3;
        Graph f = random_connected(n, 2 + trial % 4, rng);
        for (int k : {3, 4}) {
            auto fast = gadget(k, f);
            auto brute = gadget_brute(k, f);
            auto fe = fast.edges();
            auto be = brute.edges();
            std::sort(fe.begin(), fe.end());
            std::sort(be.begin(), be.end());
            CHECK(fe == be);
            // pair coverage
            for (int a = 0; a < n; ++a) {
                for (int b = a + 1; b < n; ++b) {
                    bool covered = false;
                    for (const auto& edge : fe) {
                        if (std::binary_search(edge.begin(), edge.end(), a) &&
                            std::binary_search(edge.begin(), edge.end(), b)) {
                            covered = true;
                            break;
                        }
                    }
                    CHECK(covered);
                }
            }
        }
    }
}

TEST_CASE("gadget_family relabels and unions") {
    Graph f(3);
    f.add_edge(0, 1);
    f.add_edge(1, 2);
    std::vector<std::vector<int>> copies{{0, 1, 2}, {2, 3, 4}};
    auto h = gadget_family(3, 5, f, copies);
    // on 3 hosts each copy's pairs extend to the same triple
    CHECK(h.edge_count() == 2);
    CHECK(h.has_edge({0, 1, 2}));
    CHECK(h.has_edge({2, 3, 4}));
}

TEST_SUITE_END();
