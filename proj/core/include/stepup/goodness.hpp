#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "stepup/graph.hpp"
#include "stepup/hypergraph.hpp"
#include "stepup/params.hpp"
#include "stepup/report.hpp"

namespace stepup {

enum class GmMode { exact, sampled };

struct GmBudget {
    int random_partitions = 2000;
    int adversarial_partitions = 50;
    std::uint64_t seed = 1;
};

struct GmResult {
    bool member = false;      // exact: definitive; sampled: no violation found
    bool definitive = false;  // true only in exact mode
    bool vacuous = false;     // no valid partition exists (membership by default)
    std::optional<std::vector<int>> witness;  // part index per vertex, when violating
    PropertyReport report;
};

// Membership in G_m: every partition into at most s = M_2(m) parts of size
// <= |V|/m keeps cross-pair mass over edge-connected parts above
// partition_threshold * C(|V|, 2). Exact mode enumerates partitions via
// restricted growth strings (|V| <= 12); sampled mode searches for a
// violating partition with random and adversarial candidates.
GmResult gm_member(const Graph& g, int m, const ParamSet& params, GmMode mode,
                   const GmBudget& budget = GmBudget{});

// The (k-r)-uniform hypergraph H(U; W_1..W_r) on the vertex set U (relabeled
// to [0, |U|) in ascending U order; `vertices` maps back).
struct DerivedHypergraph {
    Hypergraph hg;
    std::vector<int> vertices;
};

DerivedHypergraph derived_hypergraph(const Hypergraph& h, const std::vector<int>& U,
                                     const std::vector<std::vector<int>>& Ws);

struct GoodnessBudget {
    int tuple_trials = 20;        // sampled (U, W_1..W_{k-2}) tuples
    int heredity_trials = 2;      // induced-subgraph spot checks
    GmBudget gm;
    std::uint64_t seed = 1;
};

/// (alpha, m)-goodness audit: sampled or exact over disjoint (U, W_1..W_{k-2})
/// with all sizes >= alpha*|V(H)|; each derived graph is tested for G_m.
PropertyReport is_alpha_m_good(const Hypergraph& h, const Rational& alpha, int m,
                               const ParamSet& params, GmMode mode,
                               const GoodnessBudget& budget = GoodnessBudget{});

/// Binomial k-graph on 2n vertices at p = C m / (4 (2n)^(k-1)), resampled
/// while e(H) exceeds C m (2n) / (4k), then pruned of the n largest-degree
/// vertices (ties: smaller index removed first) and relabeled to [0, n).
Hypergraph gen_good_kgraph(int n, int k, int m, const ParamSet& params, std::uint64_t seed);

}  // namespace stepup
