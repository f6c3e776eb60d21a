#include "stepup/goodness.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "stepup/numeric.hpp"
#include "stepup/rng.hpp"

namespace stepup {

namespace {

// cross-pair mass over part pairs with at least one edge between them
std::int64_t cross_mass(const Graph& g, const std::vector<int>& part, int num_parts) {
    std::vector<std::int64_t> sizes(static_cast<std::size_t>(num_parts), 0);
    for (int p : part) ++sizes[static_cast<std::size_t>(p)];
    std::set<std::pair<int, int>> connected;
    for (auto [u, v] : g.edges()) {
        int pu = part[static_cast<std::size_t>(u)], pv = part[static_cast<std::size_t>(v)];
        if (pu == pv) continue;
        connected.insert({std::min(pu, pv), std::max(pu, pv)});
    }
    std::int64_t mass = 0;
    for (auto [a, b] : connected) mass += sizes[static_cast<std::size_t>(a)] * sizes[static_cast<std::size_t>(b)];
    return mass;
}

struct PartitionLimits {
    std::int64_t cap;        // max part size, floor(n/m)
    std::int64_t max_parts;  // s = M_2(m), saturated to n
};

PartitionLimits partition_limits(int n, int m, const ParamSet& params) {
    PartitionLimits lim;
    lim.cap = n / m;
    BigNat s = color_universe(2, params);
    lim.max_parts = s > n ? n : s.convert_to<std::int64_t>();
    return lim;
}

}  // namespace

GmResult gm_member(const Graph& g, int m, const ParamSet& params, GmMode mode,
                   const GmBudget& budget) {
    GmResult res;
    res.report.suite = "gm-membership";
    int n = g.vertex_count();
    if (m < 1) throw std::invalid_argument("gm_member: m >= 1");
    auto lim = partition_limits(n, m, params);
    Rational bound = params.partition_threshold * Rational(static_cast<std::int64_t>(n) * (n - 1) / 2, 1);
    res.report.add_context("n", std::to_string(n));
    res.report.add_context("m", std::to_string(m));
    res.report.add_context("part_cap", std::to_string(lim.cap));
    res.report.add_context("max_parts", std::to_string(lim.max_parts));
    res.report.add_context("bound", to_string(bound));

    if (lim.cap < 1 || lim.cap * lim.max_parts < n) {
        res.vacuous = true;
        res.member = true;
        res.definitive = true;
        res.report.add_pass("gm", "no valid partition (vacuous membership)", "");
        return res;
    }

    std::int64_t worst = -1;
    std::optional<std::vector<int>> witness;
    auto consider = [&](const std::vector<int>& part, int num_parts) {
        std::int64_t mass = cross_mass(g, part, num_parts);
        if (worst < 0 || mass < worst) {
            worst = mass;
            if (Rational(mass, 1) <= bound) witness = part;
        }
        return Rational(mass, 1) > bound;
    };

    if (mode == GmMode::exact) {
        if (n > 12) throw std::invalid_argument("gm_member exact mode caps at n = 12");
        res.definitive = true;
        // restricted growth strings with part-size cap and part-count cap
        std::vector<int> part(static_cast<std::size_t>(n), 0);
        std::vector<std::int64_t> sizes(static_cast<std::size_t>(n) + 1, 0);
        bool violated = false;
        auto rec = [&](auto&& self, int v, int used) -> void {
            if (violated) return;
            if (v == n) {
                if (!consider(part, used)) violated = true;
                return;
            }
            int limit = std::min<int>(used + 1, static_cast<int>(lim.max_parts));
            for (int p = 0; p < limit; ++p) {
                if (sizes[static_cast<std::size_t>(p)] >= lim.cap) continue;
                part[static_cast<std::size_t>(v)] = p;
                ++sizes[static_cast<std::size_t>(p)];
                self(self, v + 1, std::max(used, p + 1));
                --sizes[static_cast<std::size_t>(p)];
                if (violated) return;
            }
        };
        rec(rec, 0, 0);
        res.member = !violated;
    } else {
        res.definitive = false;
        Rng rng = make_rng(budget.seed);
        bool violated = false;
        // random balanced partitions: shuffle, chop into parts of size <= cap
        int parts_needed = static_cast<int>((n + lim.cap - 1) / lim.cap);
        for (int t = 0; t < budget.random_partitions && !violated; ++t) {
            int num_parts = parts_needed +
                            static_cast<int>(uniform_below(
                                rng, static_cast<std::uint64_t>(lim.max_parts - parts_needed + 1)));
            num_parts = std::min<int>(num_parts, static_cast<int>(lim.max_parts));
            std::vector<int> order(static_cast<std::size_t>(n));
            for (int v = 0; v < n; ++v) order[static_cast<std::size_t>(v)] = v;
            shuffle_vec(order, rng);
            std::vector<int> part(static_cast<std::size_t>(n), 0);
            std::vector<std::int64_t> sizes(static_cast<std::size_t>(num_parts), 0);
            int p = 0;
            for (int v : order) {
                int tries = 0;
                while (sizes[static_cast<std::size_t>(p)] >= lim.cap && tries < num_parts) {
                    p = (p + 1) % num_parts;
                    ++tries;
                }
                part[static_cast<std::size_t>(v)] = p;
                ++sizes[static_cast<std::size_t>(p)];
                p = (p + 1) % num_parts;
            }
            if (consider(part, num_parts)) continue;
            violated = true;
        }
        // adversarial: BFS clustering (keeps parts edge-connected internally,
        // starving cross-part edges), from random roots
        for (int t = 0; t < budget.adversarial_partitions && !violated; ++t) {
            std::vector<int> part(static_cast<std::size_t>(n), -1);
            std::vector<std::int64_t> sizes;
            int current = -1;
            std::vector<int> queue;
            std::vector<int> order(static_cast<std::size_t>(n));
            for (int v = 0; v < n; ++v) order[static_cast<std::size_t>(v)] = v;
            shuffle_vec(order, rng);
            for (int root : order) {
                if (part[static_cast<std::size_t>(root)] >= 0) continue;
                if (current + 1 >= lim.max_parts) break;
                ++current;
                sizes.push_back(0);
                queue.assign(1, root);
                while (!queue.empty()) {
                    int v = queue.back();
                    queue.pop_back();
                    if (part[static_cast<std::size_t>(v)] >= 0) continue;
                    if (sizes[static_cast<std::size_t>(current)] >= lim.cap) break;
                    part[static_cast<std::size_t>(v)] = current;
                    ++sizes[static_cast<std::size_t>(current)];
                    for (int w : g.neighbors(v))
                        if (part[static_cast<std::size_t>(w)] < 0) queue.push_back(w);
                }
            }
            bool complete = true;
            for (int v = 0; v < n; ++v) {
                if (part[static_cast<std::size_t>(v)] < 0) {
                    // place leftovers anywhere legal
                    bool placed = false;
                    for (int p = 0; p <= current; ++p) {
                        if (sizes[static_cast<std::size_t>(p)] < lim.cap) {
                            part[static_cast<std::size_t>(v)] = p;
                            ++sizes[static_cast<std::size_t>(p)];
                            placed = true;
                            break;
                        }
                    }
                    if (!placed && current + 1 < lim.max_parts) {
                        ++current;
                        sizes.push_back(1);
                        part[static_cast<std::size_t>(v)] = current;
                        placed = true;
                    }
                    if (!placed) complete = false;
                }
            }
            if (!complete) continue;
            if (consider(part, current + 1)) continue;
            violated = true;
        }
        res.member = !violated;
    }

    res.witness = witness;
    std::ostringstream obs;
    obs << "min cross mass " << worst;
    if (res.member)
        res.report.add_pass("gm", obs.str(), "> " + to_string(bound));
    else
        res.report.add_fail("gm", obs.str(), "> " + to_string(bound),
                            res.definitive ? "violating partition found (exact)"
                                           : "violating partition found (sampled)");
    return res;
}

DerivedHypergraph derived_hypergraph(const Hypergraph& h, const std::vector<int>& U,
                                     const std::vector<std::vector<int>>& Ws) {
    int r = static_cast<int>(Ws.size());
    int k = h.uniformity();
    if (r < 1 || r > k - 2) throw std::invalid_argument("derived_hypergraph: need 1 <= r <= k-2");
    // pairwise disjointness across U and all W_i
    std::vector<int> owner(static_cast<std::size_t>(h.vertex_count()), -1);
    auto claim = [&](const std::vector<int>& set, int tag) {
        for (int v : set) {
            if (v < 0 || v >= h.vertex_count())
                throw std::out_of_range("derived_hypergraph: vertex out of range");
            if (owner[static_cast<std::size_t>(v)] != -1)
                throw std::invalid_argument("derived_hypergraph: sets must be pairwise disjoint");
            owner[static_cast<std::size_t>(v)] = tag;
        }
    };
    claim(U, 0);
    for (int i = 0; i < r; ++i) claim(Ws[static_cast<std::size_t>(i)], i + 1);

    std::vector<int> sortedU = U;
    std::sort(sortedU.begin(), sortedU.end());
    std::map<int, int> relabel;
    for (std::size_t i = 0; i < sortedU.size(); ++i) relabel[sortedU[i]] = static_cast<int>(i);

    DerivedHypergraph out;
    out.vertices = sortedU;
    out.hg = Hypergraph(static_cast<int>(sortedU.size()), k - r);
    for (const auto& e : h.edges()) {
        std::vector<int> inU;
        std::vector<int> tags;
        bool ok = true;
        for (int v : e) {
            int t = owner[static_cast<std::size_t>(v)];
            if (t == -1) {
                ok = false;
                break;
            }
            if (t == 0) inU.push_back(v);
            else tags.push_back(t);
        }
        if (!ok || static_cast<int>(inU.size()) != k - r) continue;
        // the remaining r vertices must cover W_1..W_r exactly once each
        std::sort(tags.begin(), tags.end());
        bool covers = static_cast<int>(tags.size()) == r;
        for (int i = 0; covers && i < r; ++i)
            if (tags[static_cast<std::size_t>(i)] != i + 1) covers = false;
        if (!covers) continue;
        std::vector<int> edge;
        edge.reserve(inU.size());
        for (int v : inU) edge.push_back(relabel[v]);
        out.hg.add_edge(std::move(edge));
    }
    return out;
}

PropertyReport is_alpha_m_good(const Hypergraph& h, const Rational& alpha, int m,
                               const ParamSet& params, GmMode mode, const GoodnessBudget& budget) {
    PropertyReport rep;
    rep.suite = "alpha-m-goodness";
    int k = h.uniformity();
    int n = h.vertex_count();
    if (k < 3) throw std::invalid_argument("is_alpha_m_good: k >= 3");
    std::int64_t min_size = ceil_to_int(alpha * Rational(n, 1));
    if (min_size < 1) min_size = 1;
    rep.add_context("n", std::to_string(n));
    rep.add_context("alpha", to_string(alpha));
    rep.add_context("m", std::to_string(m));
    rep.add_context("min_set_size", std::to_string(min_size));
    rep.add_context("seed", std::to_string(budget.seed));
    if (static_cast<std::int64_t>(k - 1) * min_size > n) {
        rep.add_fail("feasibility", "k-1 disjoint sets of size " + std::to_string(min_size),
                     "fit in n = " + std::to_string(n), "alpha too large for this n");
        return rep;
    }

    Rng rng = make_rng(budget.seed);
    int bad = 0;
    int tested = 0;
    for (int t = 0; t < budget.tuple_trials; ++t) {
        auto chosen = random_subset(rng, n, static_cast<int>(static_cast<std::int64_t>(k - 1) * min_size));
        shuffle_vec(chosen, rng);
        std::vector<int> U(chosen.begin(), chosen.begin() + min_size);
        std::vector<std::vector<int>> Ws;
        for (int i = 1; i <= k - 2; ++i)
            Ws.emplace_back(chosen.begin() + static_cast<std::ptrdiff_t>(i) * min_size,
                            chosen.begin() + static_cast<std::ptrdiff_t>(i + 1) * min_size);
        auto derived = derived_hypergraph(h, U, Ws);
        // flatten to a Graph for the G_m test
        Graph g(derived.hg.vertex_count());
        for (const auto& e : derived.hg.edges()) g.add_edge(e[0], e[1]);
        GmMode inner = (mode == GmMode::exact && g.vertex_count() <= 12) ? GmMode::exact
                                                                          : GmMode::sampled;
        GmBudget gb = budget.gm;
        gb.seed = budget.seed + static_cast<std::uint64_t>(t) + 1;
        auto res = gm_member(g, m, params, inner, gb);
        ++tested;
        if (!res.member) ++bad;
    }
    std::ostringstream obs;
    obs << bad << "/" << tested << " derived graphs outside G_m";
    if (bad == 0)
        rep.add_pass("derived-gm", obs.str(), "all in G_m");
    else
        rep.add_fail("derived-gm", obs.str(), "all in G_m");

    // heredity spot check: H[U'] should be (alpha', m)-good with
    // alpha' = alpha * n / |U'|
    for (int t = 0; t < budget.heredity_trials; ++t) {
        std::int64_t sub_size = std::max<std::int64_t>(min_size * (k - 1), (3 * n) / 4);
        if (sub_size > n) sub_size = n;
        auto sub = random_subset(rng, n, static_cast<int>(sub_size));
        std::map<int, int> relabel;
        for (std::size_t i = 0; i < sub.size(); ++i) relabel[sub[i]] = static_cast<int>(i);
        Hypergraph induced(static_cast<int>(sub.size()), k);
        for (const auto& e : h.edges()) {
            std::vector<int> mapped;
            bool inside = true;
            for (int v : e) {
                auto it = relabel.find(v);
                if (it == relabel.end()) {
                    inside = false;
                    break;
                }
                mapped.push_back(it->second);
            }
            if (inside) induced.add_edge(std::move(mapped));
        }
        Rational alpha_sub = alpha * Rational(n, 1) / Rational(sub_size, 1);
        std::int64_t min_sub = ceil_to_int(alpha_sub * Rational(sub_size, 1));
        if (static_cast<std::int64_t>(k - 1) * min_sub > sub_size) continue;
        GoodnessBudget hb = budget;
        hb.tuple_trials = std::max(2, budget.tuple_trials / 4);
        hb.heredity_trials = 0;
        hb.seed = budget.seed + 1000 + static_cast<std::uint64_t>(t);
        auto sub_rep = is_alpha_m_good(induced, alpha_sub, m, params, mode, hb);
        rep.add(CheckItem{"heredity[" + std::to_string(t) + "]", sub_rep.pass,
                          sub_rep.pass ? "good" : "not good",
                          "H[U'] is (alpha*n/|U'|, m)-good", ""});
    }
    return rep;
}

Hypergraph gen_good_kgraph(int n, int k, int m, const ParamSet& params, std::uint64_t seed) {
    if (k < 2) throw std::invalid_argument("gen_good_kgraph: k >= 2");
    std::int64_t C = params.goodness_C;
    if (n < C * m / 8)
        throw std::invalid_argument("gen_good_kgraph: n too small for the configured C and m");
    const std::int64_t N = 2 * static_cast<std::int64_t>(n);
    // p = C m / (4 N^(k-1))
    double p = static_cast<double>(C) * m / 4.0;
    for (int i = 0; i < k - 1; ++i) p /= static_cast<double>(N);
    if (p > 1.0) throw std::invalid_argument("gen_good_kgraph: p > 1 under these parameters");
    Rational edge_cap = Rational(C, 1) * Rational(m, 1) * Rational(N, 4) / Rational(k, 1);

    for (int attempt = 0; attempt < 100; ++attempt) {
        Rng rng = make_rng(seed + static_cast<std::uint64_t>(attempt));
        Hypergraph h(static_cast<int>(N), k);
        // lexicographic scan over all k-subsets of [N]
        std::vector<int> idx(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
        while (true) {
            if (uniform01(rng) < p) h.add_edge(idx);
            int pos = k - 1;
            while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == N - k + pos) --pos;
            if (pos < 0) break;
            ++idx[static_cast<std::size_t>(pos)];
            for (int i = pos + 1; i < k; ++i)
                idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
        }
        if (Rational(static_cast<std::int64_t>(h.edge_count()), 1) > edge_cap) continue;

        // prune the n largest-degree vertices, ties removed smallest-index first
        auto deg = h.degrees();
        std::vector<int> order(static_cast<std::size_t>(N));
        for (std::int64_t v = 0; v < N; ++v) order[static_cast<std::size_t>(v)] = static_cast<int>(v);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            if (deg[static_cast<std::size_t>(a)] != deg[static_cast<std::size_t>(b)])
                return deg[static_cast<std::size_t>(a)] > deg[static_cast<std::size_t>(b)];
            return a < b;
        });
        std::vector<char> removed(static_cast<std::size_t>(N), 0);
        for (int i = 0; i < n; ++i) removed[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = 1;
        std::vector<int> relabel(static_cast<std::size_t>(N), -1);
        int next = 0;
        for (std::int64_t v = 0; v < N; ++v)
            if (!removed[static_cast<std::size_t>(v)]) relabel[static_cast<std::size_t>(v)] = next++;
        Hypergraph out(n, k);
        for (const auto& e : h.edges()) {
            std::vector<int> mapped;
            bool keep = true;
            for (int v : e) {
                if (removed[static_cast<std::size_t>(v)]) {
                    keep = false;
                    break;
                }
                mapped.push_back(relabel[static_cast<std::size_t>(v)]);
            }
            if (keep) out.add_edge(std::move(mapped));
        }
        // Delta(H_2) <= Cm/2 is forced by the edge cap; a breach is a defect
        if (Rational(out.max_degree(), 1) > Rational(C * m, 2))
            throw std::logic_error("gen_good_kgraph: degree bound Cm/2 violated after pruning");
        return out;
    }
    throw std::runtime_error("gen_good_kgraph: resample cap exhausted (edge count above C m N/(4k))");
}

}  // namespace stepup
