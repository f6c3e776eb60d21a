#include "stepup/embedding.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <stdexcept>

namespace stepup {

bool CappedEmbedding::respects_cap() const {
    std::map<BigNat, std::int64_t> mult;
    for (const auto& v : h)
        if (++mult[v] > cap) return false;
    return true;
}

EmbeddingClass classify_embedding(const Hypergraph& hg, const CappedEmbedding& emb,
                                  const SteppedColoring& sc) {
    if (emb.h.size() != static_cast<std::size_t>(hg.vertex_count()))
        throw std::invalid_argument("classify_embedding: mapping not total on V(H)");
    if (!emb.respects_cap()) throw std::invalid_argument("classify_embedding: cap violated");

    EmbeddingClass out;
    if (hg.edge_count() == 0) {
        out.kind = EmbedKind::monochromatic;
        out.color = FourColor::C1;  // vacuous color convention
        return out;
    }

    bool mono_ok[4] = {true, true, true, true};
    bool almost_ok[4] = {true, true, true, true};
    // remember one all-distinct edge per color for the witness
    std::optional<std::vector<int>> distinct_edge[4];

    for (const auto& e : hg.edges()) {
        std::vector<BigNat> image;
        image.reserve(e.size());
        for (int v : e) image.push_back(emb.h[static_cast<std::size_t>(v)]);
        std::vector<BigNat> sorted = image;
        std::sort(sorted.begin(), sorted.end());
        bool all_distinct = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
        FourColor c = sc.color(image);
        int ci = static_cast<int>(c) - 1;
        for (int q = 0; q < 4; ++q) {
            if (q != ci) {
                mono_ok[q] = false;
                if (all_distinct) almost_ok[q] = false;
            }
        }
        if (all_distinct && !distinct_edge[ci]) distinct_edge[ci] = e;
    }

    for (int q = 0; q < 4; ++q) {
        if (mono_ok[q]) {
            out.kind = EmbedKind::monochromatic;
            out.color = static_cast<FourColor>(q + 1);
            return out;
        }
    }
    for (int q = 0; q < 4; ++q) {
        if (almost_ok[q]) {
            out.kind = EmbedKind::almost_monochromatic;
            out.color = static_cast<FourColor>(q + 1);
            return out;
        }
    }
    out.kind = EmbedKind::neither;
    // two all-distinct edges with different colors exist whenever no color is
    // almost-monochromatic
    std::optional<int> first;
    for (int q = 0; q < 4; ++q) {
        if (!distinct_edge[q]) continue;
        if (!first) {
            first = q;
        } else {
            out.witness = {*distinct_edge[*first], *distinct_edge[q]};
            break;
        }
    }
    return out;
}

namespace {

struct Searcher {
    const Hypergraph& hg;
    const SteppedColoring& sc;
    std::int64_t b;
    std::int64_t universe;
    FourColor target;
    std::uint64_t budget;
    std::uint64_t& nodes;

    std::vector<int> order;                       // vertex assignment order
    std::vector<std::vector<std::size_t>> ready;  // edges fully assigned at step i
    std::vector<BigNat> assign;
    std::vector<std::int64_t> mult;  // value multiplicities (universe-indexed)
    bool exhausted = true;

    Searcher(const Hypergraph& h, const SteppedColoring& s, std::int64_t cap, std::uint64_t max_nodes,
             std::uint64_t& node_counter)
        : hg(h), sc(s), b(cap), universe(0), target(FourColor::C1), budget(max_nodes),
          nodes(node_counter) {
        universe = sc.universe(hg.uniformity()).convert_to<std::int64_t>();
        int n = hg.vertex_count();
        order.resize(static_cast<std::size_t>(n));
        for (int v = 0; v < n; ++v) order[static_cast<std::size_t>(v)] = v;
        std::vector<int> deg(static_cast<std::size_t>(n), 0);
        for (const auto& e : hg.edges())
            for (int v : e) ++deg[static_cast<std::size_t>(v)];
        std::stable_sort(order.begin(), order.end(), [&](int a, int bb) {
            if (deg[static_cast<std::size_t>(a)] != deg[static_cast<std::size_t>(bb)])
                return deg[static_cast<std::size_t>(a)] > deg[static_cast<std::size_t>(bb)];
            return a < bb;
        });
        std::vector<int> pos(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) pos[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;
        ready.resize(static_cast<std::size_t>(n));
        for (std::size_t ei = 0; ei < hg.edges().size(); ++ei) {
            int last = 0;
            for (int v : hg.edges()[ei]) last = std::max(last, pos[static_cast<std::size_t>(v)]);
            ready[static_cast<std::size_t>(last)].push_back(ei);
        }
        assign.assign(static_cast<std::size_t>(n), BigNat(0));
        mult.assign(static_cast<std::size_t>(universe), 0);
    }

    bool dfs(int depth) {
        if (nodes++ >= budget) {
            exhausted = false;
            return false;
        }
        if (depth == hg.vertex_count()) return true;
        int v = order[static_cast<std::size_t>(depth)];
        for (std::int64_t val = 0; val < universe; ++val) {
            if (mult[static_cast<std::size_t>(val)] >= b) continue;
            assign[static_cast<std::size_t>(v)] = val;
            ++mult[static_cast<std::size_t>(val)];
            bool ok = true;
            for (std::size_t ei : ready[static_cast<std::size_t>(depth)]) {
                std::vector<BigNat> image;
                for (int w : hg.edges()[ei]) image.push_back(assign[static_cast<std::size_t>(w)]);
                if (sc.color(image) != target) {
                    ok = false;
                    break;
                }
            }
            if (ok && dfs(depth + 1)) return true;
            --mult[static_cast<std::size_t>(val)];
            if (!exhausted) return false;
        }
        return false;
    }
};

}  // namespace

SearchResult search_mono_embedding(const Hypergraph& h, const SteppedColoring& sc, std::int64_t b,
                                   const SearchBudget& budget) {
    SearchResult res;
    BigNat M = sc.universe(h.uniformity());
    if (M > budget.max_universe)
        throw std::invalid_argument("search_mono_embedding: universe exceeds search budget cap");
    bool any_budget_out = false;
    for (int q = 0; q < 4; ++q) {
        // res.nodes accumulates across the four targets against one cap
        Searcher s(h, sc, b, budget.max_nodes, res.nodes);
        s.target = static_cast<FourColor>(q + 1);
        bool found = s.dfs(0);
        if (found) {
            res.status = SearchStatus::found;
            res.color = s.target;
            res.embedding = CappedEmbedding{s.assign, b};
            res.per_color[static_cast<std::size_t>(q)] = SearchStatus::found;
            return res;
        }
        if (!s.exhausted) {
            res.per_color[static_cast<std::size_t>(q)] = SearchStatus::budget_exhausted;
            any_budget_out = true;
        } else {
            res.per_color[static_cast<std::size_t>(q)] = SearchStatus::proven_absent;
        }
    }
    res.status = any_budget_out ? SearchStatus::budget_exhausted : SearchStatus::proven_absent;
    return res;
}

bool psi_equivalence_check(const Hypergraph& h, const CappedEmbedding& emb,
                           const SteppedColoring& sc, std::int64_t b) {
    auto cls = classify_embedding(h, emb, sc);
    if (cls.kind != EmbedKind::monochromatic)
        throw std::invalid_argument("psi_equivalence_check: embedding must be monochromatic");
    if (h.edge_count() == 0) return true;
    // explicit injection v -> (h(v), y_v) with per-value counters
    std::map<BigNat, std::int64_t> counter;
    std::vector<std::pair<BigNat, std::int64_t>> lift(static_cast<std::size_t>(h.vertex_count()));
    for (int v = 0; v < h.vertex_count(); ++v) {
        const BigNat& x = emb.h[static_cast<std::size_t>(v)];
        std::int64_t y = counter[x]++;
        if (y >= b) return false;  // cap violation surfaced as a defect
        lift[static_cast<std::size_t>(v)] = {x, y};
    }
    for (const auto& e : h.edges()) {
        std::vector<std::pair<BigNat, std::int64_t>> verts;
        verts.reserve(e.size());
        for (int v : e) verts.push_back(lift[static_cast<std::size_t>(v)]);
        if (sc.lifted(verts, b) != *cls.color) return false;
    }
    return true;
}

namespace {

// does any color class contain a copy of H (subgraph containment)?
struct CopyFinder {
    const Hypergraph& pattern;
    int n;  // host size
    const std::vector<std::uint8_t>& colors;
    const std::vector<std::vector<int>>& host_edges;
    std::map<std::vector<int>, std::size_t> edge_index;

    CopyFinder(const Hypergraph& p, int host_n, const std::vector<std::uint8_t>& cols,
               const std::vector<std::vector<int>>& hedges)
        : pattern(p), n(host_n), colors(cols), host_edges(hedges) {
        for (std::size_t i = 0; i < host_edges.size(); ++i) edge_index[host_edges[i]] = i;
    }

    bool mono_copy_exists(int color) {
        std::vector<int> image(static_cast<std::size_t>(pattern.vertex_count()), -1);
        std::vector<char> used(static_cast<std::size_t>(n), 0);
        return place(0, image, used, color);
    }

    bool place(int v, std::vector<int>& image, std::vector<char>& used, int color) {
        if (v == pattern.vertex_count()) return true;
        for (int cand = 0; cand < n; ++cand) {
            if (used[static_cast<std::size_t>(cand)]) continue;
            image[static_cast<std::size_t>(v)] = cand;
            used[static_cast<std::size_t>(cand)] = 1;
            bool ok = true;
            for (const auto& e : pattern.edges()) {
                bool complete = true;
                std::vector<int> mapped;
                for (int w : e) {
                    if (image[static_cast<std::size_t>(w)] < 0) {
                        complete = false;
                        break;
                    }
                    mapped.push_back(image[static_cast<std::size_t>(w)]);
                }
                if (!complete) continue;
                std::sort(mapped.begin(), mapped.end());
                auto it = edge_index.find(mapped);
                if (it == edge_index.end() || colors[it->second] != color) {
                    ok = false;
                    break;
                }
            }
            if (ok && place(v + 1, image, used, color)) return true;
            used[static_cast<std::size_t>(cand)] = 0;
            image[static_cast<std::size_t>(v)] = -1;
        }
        return false;
    }
};

std::vector<std::vector<int>> complete_edges(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
        out.push_back(idx);
        int pos = k - 1;
        while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - k + pos) --pos;
        if (pos < 0) break;
        ++idx[static_cast<std::size_t>(pos)];
        for (int i = pos + 1; i < k; ++i)
            idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
    }
    return out;
}

}  // namespace

RamseyResult ramsey_oracle(const Hypergraph& h, int q, int n_max, const RamseyBudget& budget) {
    RamseyResult res;
    int k = h.uniformity();
    if (q < 1) throw std::invalid_argument("ramsey_oracle: q >= 1");
    for (int n = std::max(k, h.vertex_count() > 0 ? 1 : k); n <= n_max; ++n) {
        if (n < k) continue;
        auto hedges = complete_edges(n, k);
        std::size_t e = hedges.size();
        // q^e colorings; bail out when past the budget
        long double total_ld = 1;
        for (std::size_t i = 0; i < e; ++i) {
            total_ld *= q;
            if (total_ld > static_cast<long double>(budget.max_colorings) * 4) break;
        }
        if (total_ld > static_cast<long double>(budget.max_colorings)) {
            res.budget_exhausted = true;
            return res;
        }
        std::uint64_t total = 1;
        for (std::size_t i = 0; i < e; ++i) total *= static_cast<std::uint64_t>(q);

        std::vector<std::uint8_t> colors(e, 0);
        bool all_have_copy = true;
        for (std::uint64_t code = 0; code < total; ++code) {
            std::uint64_t c = code;
            for (std::size_t i = 0; i < e; ++i) {
                colors[i] = static_cast<std::uint8_t>(c % static_cast<std::uint64_t>(q));
                c /= static_cast<std::uint64_t>(q);
            }
            ++res.colorings_checked;
            CopyFinder finder(h, n, colors, hedges);
            bool found = false;
            for (int col = 0; col < q && !found; ++col) found = finder.mono_copy_exists(col);
            if (!found) {
                all_have_copy = false;
                res.best_lower_n = n;
                res.witness = colors;
                break;
            }
        }
        if (all_have_copy) {
            res.value = n;
            return res;
        }
    }
    return res;
}

void write_certificate(std::ostream& os, const std::string& params_line, bool exhausted_full,
                       int n, int k, const std::vector<std::vector<int>>& edges,
                       const std::vector<std::uint8_t>& colors) {
    os << params_line << "\n";
    if (exhausted_full) {
        os << "exhausted full\n";
        return;
    }
    os << "hypergraph n=" << n << " k=" << k << " e=" << edges.size() << " colors=1\n";
    for (std::size_t i = 0; i < edges.size(); ++i) {
        for (std::size_t j = 0; j < edges[i].size(); ++j) os << (j ? " " : "") << edges[i][j];
        os << " " << static_cast<int>(colors[i]) << "\n";
    }
}

}  // namespace stepup
