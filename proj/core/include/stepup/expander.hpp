#pragma once

#include <cstdint>

#include "stepup/graph.hpp"
#include "stepup/rational.hpp"
#include "stepup/report.hpp"

namespace stepup {

/// Simple d-regular graph on M vertices via the configuration model with
/// rejection, then degree-preserving edge-swap repair. Deterministic per seed.
Graph gen_random_regular(int M, int d, std::uint64_t seed);

/// Second largest adjacency eigenvalue in absolute value. Requires a regular
/// graph and M within the dense-solver cap.
double lambda2(const Graph& g, int dense_cap = 2048);

enum class ExpansionMode { exact, sampled };

struct ExpansionBudget {
    int set_trials = 200;       // sampled U per size
    int mixing_pairs = 1000;    // sampled (U, W) pairs for the mixing slack
    std::uint64_t seed = 1;
};

// F1-style audit: for tested U with |U| >= eps*M, the number of vertices with
// fewer than k neighbors in U must be at most eps*M. Also reports the
// expander-mixing slack e(U,W) - (d|U||W|/M - lambda*sqrt(|U||W|)) on sampled
// pairs, using the ordered-pair count so the inequality is exact for any sets.
PropertyReport verify_neighbor_expansion(const Graph& g, const Rational& eps, int k,
                                         ExpansionMode mode,
                                         const ExpansionBudget& budget = ExpansionBudget{});

}  // namespace stepup
