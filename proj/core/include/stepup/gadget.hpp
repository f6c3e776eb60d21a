#pragma once

#include <vector>

#include "stepup/graph.hpp"
#include "stepup/hypergraph.hpp"

namespace stepup {

/// All connected induced vertex sets of the given size, each exactly once.
std::vector<std::vector<int>> connected_subsets(const Graph& g, int size);

/// The gadget H^(k)(F): a k-edge for every connected (k-1)-subset of F plus
/// any other vertex. For k = 2 this is the complete graph on V(F).
Hypergraph gadget(int k, const Graph& f);

/// Union of gadgets of relabeled copies; `copies` maps each copy's vertex j
/// to its host vertex in [0, n).
Hypergraph gadget_family(int k, int n, const Graph& f,
                         const std::vector<std::vector<int>>& copies);

}  // namespace stepup
