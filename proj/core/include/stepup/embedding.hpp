#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "stepup/coloring.hpp"
#include "stepup/hypergraph.hpp"
#include "stepup/numeric.hpp"

namespace stepup {

// Total vertex -> value mapping with per-value multiplicity at most `cap`.
struct CappedEmbedding {
    std::vector<BigNat> h;  // indexed by vertex
    std::int64_t cap = 1;

    bool respects_cap() const;
};

enum class EmbedKind { monochromatic, almost_monochromatic, neither };

struct EmbeddingClass {
    EmbedKind kind = EmbedKind::neither;
    std::optional<FourColor> color;
    // two edges whose all-distinct images take different colors
    std::optional<std::pair<std::vector<int>, std::vector<int>>> witness;
};

/// Classifies h against the stepped coloring: monochromatic (every edge image
/// multiset takes one color), almost monochromatic (edges with repeated image
/// values are exempt), or neither (with a two-edge witness). Edgeless
/// hypergraphs are monochromatic with reported color C1.
EmbeddingClass classify_embedding(const Hypergraph& h, const CappedEmbedding& emb,
                                  const SteppedColoring& sc);

enum class SearchStatus { found, proven_absent, budget_exhausted };

struct SearchResult {
    SearchStatus status = SearchStatus::proven_absent;
    std::optional<CappedEmbedding> embedding;
    std::optional<FourColor> color;
    std::array<SearchStatus, 4> per_color{};  // indexed by color - 1
    std::uint64_t nodes = 0;
};

struct SearchBudget {
    std::uint64_t max_nodes = 50'000'000;
    std::int64_t max_universe = 4096;
};

/// Backtracking search for a monochromatic embedding into phi^(k)[b]:
/// vertices in descending-degree order, values ascending, with cap pruning
/// and per-edge color-consistency pruning against each target color in turn.
/// Full exhaustion of all four targets certifies non-existence.
SearchResult search_mono_embedding(const Hypergraph& h, const SteppedColoring& sc, std::int64_t b,
                                   const SearchBudget& budget = SearchBudget{});

/// Rebuilds the injection v -> (h(v), y_v) into the lifted coloring Psi and
/// confirms every image edge takes the embedding's color. Must return true
/// for every monochromatic embedding; false signals a defect.
bool psi_equivalence_check(const Hypergraph& h, const CappedEmbedding& emb,
                           const SteppedColoring& sc, std::int64_t b);

struct RamseyResult {
    std::optional<int> value;             // r(H; q) if decided within N_max
    int best_lower_n = 0;                 // largest N with a witness coloring
    std::vector<std::uint8_t> witness;    // colors per edge at best_lower_n
    bool budget_exhausted = false;
    std::uint64_t colorings_checked = 0;
};

struct RamseyBudget {
    std::uint64_t max_colorings = std::uint64_t{1} << 26;
};

/// Desk-scale exact Ramsey oracle: least N <= N_max such that every
/// q-coloring of the complete k-graph on N vertices contains a monochromatic
/// copy of H (subgraph containment), by full enumeration.
RamseyResult ramsey_oracle(const Hypergraph& h, int q, int n_max,
                           const RamseyBudget& budget = RamseyBudget{});

/// Writes a non-existence / lower-bound certificate: a parameter line, then
/// `exhausted full` or an explicit coloring dump (edge rows with a trailing
/// color column).
void write_certificate(std::ostream& os, const std::string& params_line, bool exhausted_full,
                       int n, int k, const std::vector<std::vector<int>>& edges,
                       const std::vector<std::uint8_t>& colors);

}  // namespace stepup
