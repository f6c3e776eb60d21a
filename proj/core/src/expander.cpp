#include "stepup/expander.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "stepup/rational.hpp"
#include "stepup/rng.hpp"

namespace stepup {

namespace {

// pair up stubs; returns edge multiset, loops allowed here
std::vector<std::pair<int, int>> pair_stubs(std::vector<int>& stubs, Rng& rng) {
    shuffle_vec(stubs, rng);
    std::vector<std::pair<int, int>> out;
    out.reserve(stubs.size() / 2);
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
        int u = stubs[i], v = stubs[i + 1];
        if (u > v) std::swap(u, v);
        out.emplace_back(u, v);
    }
    return out;
}

bool is_simple(const std::vector<std::pair<int, int>>& edges) {
    std::set<std::pair<int, int>> seen;
    for (auto [u, v] : edges) {
        if (u == v) return false;
        if (!seen.insert({u, v}).second) return false;
    }
    return true;
}

}  // namespace

Graph gen_random_regular(int M, int d, std::uint64_t seed) {
    if (d >= M) throw std::invalid_argument("gen_random_regular: need d < M");
    if (d < 1) throw std::invalid_argument("gen_random_regular: need d >= 1");
    if ((static_cast<long long>(d) * M) % 2 != 0)
        throw std::invalid_argument("gen_random_regular: d*M must be even");

    Rng rng = make_rng(seed);
    std::vector<int> stubs;
    stubs.reserve(static_cast<std::size_t>(M) * d);
    for (int v = 0; v < M; ++v)
        for (int i = 0; i < d; ++i) stubs.push_back(v);

    std::vector<std::pair<int, int>> edges;
    bool simple = false;
    for (int attempt = 0; attempt < 100 && !simple; ++attempt) {
        edges = pair_stubs(stubs, rng);
        simple = is_simple(edges);
    }
    if (!simple) {
        // repair by degree-preserving double-edge swaps
        std::multiset<std::pair<int, int>> pool(edges.begin(), edges.end());
        auto bad = [&](const std::pair<int, int>& e) {
            return e.first == e.second || pool.count(e) > 1;
        };
        long long budget = static_cast<long long>(edges.size()) * 200;
        while (budget-- > 0) {
            std::vector<std::pair<int, int>> bad_edges;
            for (const auto& e : pool)
                if (bad(e)) bad_edges.push_back(e);
            if (bad_edges.empty()) break;
            auto e1 = bad_edges[uniform_below(rng, bad_edges.size())];
            // random partner edge
            auto it = pool.begin();
            std::advance(it, static_cast<long>(uniform_below(rng, pool.size())));
            auto e2 = *it;
            if (e1 == e2) continue;
            // swap endpoints: (a,b),(c,d) -> (a,c),(b,d)
            int a = e1.first, b = e1.second, c = e2.first, d2 = e2.second;
            std::pair<int, int> f1{std::min(a, c), std::max(a, c)};
            std::pair<int, int> f2{std::min(b, d2), std::max(b, d2)};
            if (f1.first == f1.second || f2.first == f2.second) continue;
            if (pool.count(f1) > 0 || pool.count(f2) > 0) continue;
            pool.erase(pool.find(e1));
            pool.erase(pool.find(e2));
            pool.insert(f1);
            pool.insert(f2);
        }
        edges.assign(pool.begin(), pool.end());
        if (!is_simple(edges))
            throw std::runtime_error("gen_random_regular: repair failed after swap budget");
    }

    Graph g(M);
    for (auto [u, v] : edges) g.add_edge(u, v);
    g.normalize();
    return g;
}

double lambda2(const Graph& g, int dense_cap) {
    int M = g.vertex_count();
    if (M > dense_cap)
        throw std::invalid_argument("lambda2: vertex count exceeds dense-solver cap");
    int d = 0;
    if (!g.is_regular(&d))
        throw std::invalid_argument("lambda2: graph is not regular");
    if (M < 2) return 0.0;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(M, M);
    for (auto [u, v] : g.edges()) {
        A(u, v) = 1.0;
        A(v, u) = 1.0;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(A, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw std::runtime_error("lambda2: eigensolver failed");
    std::vector<double> abs_ev(static_cast<std::size_t>(M));
    for (int i = 0; i < M; ++i) abs_ev[static_cast<std::size_t>(i)] = std::abs(solver.eigenvalues()(i));
    std::sort(abs_ev.begin(), abs_ev.end(), std::greater<>());
    return abs_ev[1];
}

namespace {

// ordered-pair edge count e(U, W) = #{(u, w) in U x W : uw in E}
long long ordered_edge_count(const Graph& g, const std::vector<char>& inU,
                             const std::vector<char>& inW) {
    long long count = 0;
    for (auto [u, v] : g.edges()) {
        if (inU[static_cast<std::size_t>(u)] && inW[static_cast<std::size_t>(v)]) ++count;
        if (inU[static_cast<std::size_t>(v)] && inW[static_cast<std::size_t>(u)]) ++count;
    }
    return count;
}

int count_low_degree_into(const Graph& g, const std::vector<char>& inU, int k) {
    int M = g.vertex_count();
    int violators = 0;
    for (int v = 0; v < M; ++v) {
        int nb = 0;
        for (int w : g.neighbors(v))
            if (inU[static_cast<std::size_t>(w)]) ++nb;
        if (nb < k) ++violators;
    }
    return violators;
}

}  // namespace

PropertyReport verify_neighbor_expansion(const Graph& g, const Rational& eps, int k,
                                         ExpansionMode mode, const ExpansionBudget& budget) {
    PropertyReport rep;
    rep.suite = "neighbor-expansion";
    int M = g.vertex_count();
    std::int64_t floor_eM = floor_to_int(eps * Rational(M, 1));
    std::int64_t min_size = ceil_to_int(eps * Rational(M, 1));
    if (min_size < 1) min_size = 1;
    rep.add_context("M", std::to_string(M));
    rep.add_context("eps", to_string(eps));
    rep.add_context("k", std::to_string(k));

    int worst = 0;
    std::string worst_at;
    auto audit = [&](const std::vector<char>& inU, const std::string& tag) {
        int violators = count_low_degree_into(g, inU, k);
        if (violators > worst) {
            worst = violators;
            worst_at = tag;
        }
        return violators;
    };

    if (mode == ExpansionMode::exact) {
        if (M > 20) throw std::invalid_argument("exact expansion mode requires M <= 20");
        std::vector<char> inU(static_cast<std::size_t>(M), 0);
        for (std::uint32_t mask = 0; mask < (1u << M); ++mask) {
            int size = __builtin_popcount(mask);
            if (size < min_size) continue;
            for (int v = 0; v < M; ++v) inU[static_cast<std::size_t>(v)] = (mask >> v) & 1u;
            audit(inU, "mask=" + std::to_string(mask));
        }
        rep.add_context("mode", "exact");
    } else {
        rep.add_context("mode", "sampled");
        rep.add_context("seed", std::to_string(budget.seed));
        Rng rng = make_rng(budget.seed);
        std::vector<std::int64_t> sizes{min_size, std::min<std::int64_t>(M, 2 * min_size),
                                        std::min<std::int64_t>(M, 4 * min_size)};
        for (std::int64_t size : sizes) {
            for (int t = 0; t < budget.set_trials; ++t) {
                auto u = random_subset(rng, M, static_cast<int>(size));
                std::vector<char> inU(static_cast<std::size_t>(M), 0);
                for (int v : u) inU[static_cast<std::size_t>(v)] = 1;
                audit(inU, "random size=" + std::to_string(size));
            }
        }
        // adversarial: lowest-degree prefix and a BFS ball
        {
            std::vector<int> order(static_cast<std::size_t>(M));
            for (int v = 0; v < M; ++v) order[static_cast<std::size_t>(v)] = v;
            std::sort(order.begin(), order.end(),
                      [&](int a, int b) { return g.degree(a) < g.degree(b); });
            std::vector<char> inU(static_cast<std::size_t>(M), 0);
            for (std::int64_t i = 0; i < min_size; ++i)
                inU[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = 1;
            audit(inU, "low-degree prefix");
        }
    }

    std::ostringstream obs;
    obs << worst << " violators";
    if (!worst_at.empty()) obs << " (" << worst_at << ")";
    if (worst <= floor_eM)
        rep.add_pass("F1-neighbor-count", obs.str(), "<= eps*M = " + std::to_string(floor_eM));
    else
        rep.add_fail("F1-neighbor-count", obs.str(), "<= eps*M = " + std::to_string(floor_eM));

    // mixing-lemma slack on sampled disjoint (U, W) pairs
    if (mode == ExpansionMode::sampled && M >= 4) {
        int d = 0;
        if (g.is_regular(&d)) {
            double lambda = lambda2(g);
            rep.add_context("lambda", std::to_string(lambda));
            Rng rng = make_rng(budget.seed + 1);
            double min_slack = 1e300;
            for (int t = 0; t < budget.mixing_pairs; ++t) {
                int su = 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(M / 2)));
                int sw = 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(M / 2)));
                auto perm = random_subset(rng, M, su + sw);
                shuffle_vec(perm, rng);
                std::vector<char> inU(static_cast<std::size_t>(M), 0), inW(static_cast<std::size_t>(M), 0);
                for (int i = 0; i < su; ++i) inU[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = 1;
                for (int i = su; i < su + sw; ++i) inW[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = 1;
                long long e = ordered_edge_count(g, inU, inW);
                double bound = static_cast<double>(d) * su * sw / M -
                               lambda * std::sqrt(static_cast<double>(su) * sw);
                min_slack = std::min(min_slack, static_cast<double>(e) - bound);
            }
            std::ostringstream slack_obs;
            slack_obs << "min slack " << min_slack << " over " << budget.mixing_pairs << " pairs";
            if (min_slack >= -1e-6)
                rep.add_pass("mixing-lemma-slack", slack_obs.str(), ">= 0");
            else
                rep.add_fail("mixing-lemma-slack", slack_obs.str(), ">= 0");
        }
    }

    return rep;
}

}  // namespace stepup
