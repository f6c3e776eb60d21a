#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "stepup/coloring.hpp"
#include "stepup/graph.hpp"
#include "stepup/numeric.hpp"
#include "stepup/params.hpp"
#include "stepup/report.hpp"
#include "stepup/template_family.hpp"

namespace stepup {

// Positions are 1-based and intervals inclusive throughout this module,
// matching the interval procedure's bookkeeping; position i carries value
// xs[i-1]. Vertex ids stay 0-based.
struct PosInterval {
    std::int64_t lo = 1, hi = 0;
    std::int64_t length() const { return hi - lo + 1; }
    bool contains(std::int64_t p) const { return lo <= p && p <= hi; }
};

struct StepRecord {
    std::int64_t l, r, p;
    bool right;
};

struct StepTrace {
    std::vector<BigNat> xs;      // ascending
    std::vector<BigNat> deltas;  // deltas[i-1] = delta(x_i, x_{i+1})
    std::vector<StepRecord> steps;  // pivot steps 1..T-1
    std::int64_t final_l = 1, final_r = 1;
    std::int64_t b_u = 1;  // multiplicity cap active during the run

    std::int64_t n() const { return static_cast<std::int64_t>(xs.size()); }
    std::int64_t total_steps() const { return static_cast<std::int64_t>(steps.size()) + 1; }
    const BigNat& delta_at(std::int64_t i) const;  // 1-based

    /// Nesting, half-length, final-length and pivot-maximality invariants.
    PropertyReport validate(const ParamSet& params) const;
};

/// The interval-splitting procedure: repeatedly pivot at the unique delta
/// argmax, descending left or right by the longer side, until the interval
/// length drops below max(n_u/stop_divisor, 2). A non-unique argmax while the
/// length exceeds b_u is a defect (throws std::logic_error).
StepTrace run_interval_procedure(const std::vector<BigNat>& xs, const ParamSet& params,
                                 std::int64_t b_u);

struct TripleSelection {
    bool mirrored = false;  // left-steps case, transformed to the right case
    StepTrace trace;        // the trace downstream stages consume
    std::int64_t t1 = 0, t2 = 0, t3 = 0;
    PosInterval I1, I2, I3;
    std::vector<std::int64_t> R;  // right steps j in [t1, t2)
    std::vector<PosInterval> S;   // S_j = [l_j, p_j] per j in R
    std::int64_t b_next = 1;
    std::vector<std::size_t> small_idx;  // R/S indices with |S_j| <= b_next
    std::vector<std::size_t> big_idx;

    std::int64_t x_star_pos() const { return I3.lo; }  // l_{t2}
    const BigNat& x_star() const { return trace.xs[static_cast<std::size_t>(I3.lo - 1)]; }
};

/// The five-round pigeonhole from the triple-finding claim. When the rounds
/// deliver the left-steps case, the sequence is mirrored (index reversal via
/// the value complement M_u-1-x, which preserves all deltas) and the
/// right-case logic reruns on the mirror; the returned selection then carries
/// the mirrored trace. Throws std::invalid_argument when T = 1 or a round
/// cannot place its index.
TripleSelection find_triple(const StepTrace& trace, const ParamSet& params, std::int64_t b_next,
                            const BigNat& universe);

// Executable form of the induction claim's state at uniformity u.
struct ReductionState {
    int u = 3;
    ParamSet params;
    std::uint64_t coloring_seed = 1;
    std::int64_t n_total = 0;            // the template's vertex count n
    std::vector<int> orig;               // position-1 -> original vertex id
    std::vector<BigNat> xs;              // ascending values (the embedding h^u)
    std::vector<std::vector<std::int64_t>> block_positions;  // per block, sorted 1-based
    std::vector<std::vector<int>> wsets;  // W_{u+1}..W_k as original-id sets

    std::int64_t n_u() const { return static_cast<std::int64_t>(xs.size()); }
    ReductionState mirrored(const BigNat& universe) const;

    void save(std::ostream& os) const;
    static ReductionState load(std::istream& is);
};

struct PruneOutcome {
    std::vector<std::vector<std::int64_t>> b_prime;  // per block, sorted positions
    std::vector<char> correlated;                    // per block
    PropertyReport report;
};

/// Block pruning: empties any block correlated with I_1, I_2 or I_3 (in the
/// >= eps*s sense), otherwise keeps the members of B_i^u in I_2 with at least
/// k F_i-neighbors in B_i^u cap I_1 and in B_i^u cap I_3. Emits the observed
/// values of the two counting inequalities as report items. `f` is the graph
/// whose copies the template places (F_i = f relabeled through placements).
PruneOutcome prune_blocks(const ReductionState& state, const TripleSelection& sel,
                          const TemplateFamily& tmpl, const Graph& f);

struct SeparationViolation {
    std::size_t block = 0;
    std::int64_t j = 0;  // step index of the S_j
    std::int64_t v = 0, w = 0;
    std::vector<std::int64_t> e1, e2;  // witness edges as positions
    FourColor color1, color2;
    bool class1_ok = false;  // e1 in {C3,C4} (u=3) / = C1 (u>=4)
    bool class2_ok = false;  // e2 in {C1,C2} (u=3) / = C2 (u>=4)
    bool d_audit_ok = false;
};

struct SeparationOutcome {
    bool pass = true;
    std::vector<SeparationViolation> violations;
    PropertyReport report;
};

/// The separation claim |B'_i cap S_j| <= 1. Each violation is materialized:
/// the two witness edges are built from the F_i-neighbors in I_1/I_3, both
/// are evaluated under phi, and the D1-D4 inequalities are audited. With a
/// monochromatic h^u on H_E^u these differently-colored images are the
/// paper's contradiction.
SeparationOutcome check_separation(const std::vector<std::vector<std::int64_t>>& b_prime,
                                   const TripleSelection& sel, const ReductionState& state,
                                   const TemplateFamily& tmpl, const Graph& f,
                                   const SteppedColoring& sc);

struct NextEmbedding {
    std::vector<std::int64_t> positions;  // U^{u-1} as parent positions
    std::vector<BigNat> values;           // h^{u-1} per position
    PropertyReport report;
};

/// h^{u-1}(i) = delta(x_i, x*) with x* = x_{l_{t2}}; verifies the range bound
/// against M_{u-1}, per-block interval containment, cross-block order
/// reversal, and the b_{u-1} multiplicity cap. Throws on malformed input;
/// check failures are report items.
NextEmbedding build_next_embedding(const ReductionState& state, const TripleSelection& sel,
                                   const std::vector<std::int64_t>& u_next);

/// Color-determination identity on a chain with strictly decreasing
/// consecutive deltas: phi^(u)(chain) must equal phi^(u-1) of the delta
/// vector (u >= 4), or correspond through the C3/C4 <-> red/blue table
/// (u = 3). A mismatch is an implementation defect, reported not thrown.
PropertyReport check_color_determination(const SteppedColoring& sc, int u,
                                         const std::vector<BigNat>& chain);

/// Realizes a value chain with prescribed strictly decreasing consecutive
/// deltas: x_1 = prefix * 2^(d_1), x_{i+1} = x_i + 2^(d_i - 1).
std::vector<BigNat> realize_decreasing_chain(const std::vector<std::int64_t>& ds,
                                             const BigNat& prefix);

enum class StepOutcomeKind { advanced, counterexample, breach };

struct StepOutcome {
    StepOutcomeKind kind = StepOutcomeKind::breach;
    std::optional<ReductionState> next;
    std::optional<SeparationOutcome> separation;
    PropertyReport report;
};

/// One full induction step: interval procedure, triple selection, block
/// pruning, separation check (a violation yields the counterexample
/// outcome), the R_S/R_B mass dichotomy, the new embedding with its audits,
/// and color-determination sampling. Desk-scale inequality failures that
/// block continuation yield the breach outcome; observed-vs-bound misses
/// that do not block are flagged in the report.
StepOutcome step_down(const ReductionState& state, const SteppedColoring& sc,
                      const TemplateFamily& tmpl, const Graph& f, std::uint64_t audit_seed = 1);

/// Fresh top-level state (u = k) over a sorted value vector: positions map
/// to original vertices through the sorting permutation, template blocks map
/// to positions, and no W sets exist yet.
ReductionState make_initial_state(int k, const ParamSet& params, std::uint64_t coloring_seed,
                                  const std::vector<BigNat>& values,
                                  const TemplateFamily& tmpl);

}  // namespace stepup
