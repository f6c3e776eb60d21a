#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "stepup/graph.hpp"
#include "stepup/params.hpp"
#include "stepup/report.hpp"

namespace stepup {

// Near-disjoint s-blocks over [0, n) hosting relabeled copies of the
// expander F. placements[i][j] is the host vertex of F-vertex j in block i;
// placements may be empty until place_copies() runs.
struct TemplateFamily {
    int n = 0;
    int s = 0;
    std::int64_t degree_cap = 0;  // the family's C
    Rational eps{1, 10};
    std::vector<std::vector<int>> blocks;      // sorted s-subsets of [0, n)
    std::vector<std::vector<int>> placements;  // per-block F-vertex -> host vertex

    // generation log
    int attempts_used = 0;
    std::int64_t drawn = 0;      // K
    std::int64_t bad_count = 0;  // drawn - accepted
    std::int64_t w_size = 0;     // overloaded vertices

    int block_multiplicity(int v) const;
    int max_multiplicity() const;
    std::int64_t max_pairwise_intersection() const;

    void save(std::ostream& os) const;
    static TemplateFamily load(std::istream& is);
};

/// The randomized block-placement procedure: K multisets of s0 = s + eps*s/4
/// draws, trimmed to s-sets avoiding overloaded vertices, with mutual
/// pairwise-intersection and distinctness filters; retries on fresh seeds
/// while fewer than K/2 sets survive, up to 5 attempts.
TemplateFamily gen_template(int n, int s, const Rational& eps, const ParamSet& params,
                            std::uint64_t seed);

/// Relabels F onto every block with a seeded random permutation.
void place_copies(TemplateFamily& t, const Graph& f, std::uint64_t seed);

struct TemplateAuditBudget {
    int random_sets = 100;
    std::uint64_t seed = 1;
};

// Exact audits (sizes, pairwise intersections, multiplicity cap) plus the
// block-correlation property on random A (sizes spanning [eps*n, n]) and
// adversarial A (disjoint block unions, prefixes of [n]): at most eps*e(T)
// blocks may deviate from proportional intersection by more than eps*s.
PropertyReport verify_template(const TemplateFamily& t, const Rational& eps,
                               const TemplateAuditBudget& budget = TemplateAuditBudget{});

}  // namespace stepup
