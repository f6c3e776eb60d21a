#pragma once

#include <cstdint>
#include <string>

#include "stepup/expander.hpp"
#include "stepup/gadget.hpp"
#include "stepup/goodness.hpp"
#include "stepup/graph.hpp"
#include "stepup/hypergraph.hpp"
#include "stepup/params.hpp"
#include "stepup/report.hpp"
#include "stepup/template_family.hpp"

namespace stepup {

struct BundleSeeds {
    std::uint64_t random_part = 1;
    std::uint64_t expander = 2;
    std::uint64_t template_blocks = 3;
    std::uint64_t placement = 4;
};

// The assembled construction: pseudorandom part H_R, expander part
// H_E = union of per-block gadgets, and their edge union H.
struct ConstructionBundle {
    ParamSet params;
    BundleSeeds seeds;
    Graph expander;
    TemplateFamily blocks;
    Hypergraph h_random;
    Hypergraph h_expander;
    Hypergraph h;
    PropertyReport audits;

    void save_all(const std::string& prefix) const;
};

/// Builds every stage and audits the union: E(H) = E(H_R) u E(H_E) exactly
/// and Delta(H) <= Delta(H_R) + Delta(H_E).
ConstructionBundle assemble(int n, int k, int m, const ParamSet& params, const BundleSeeds& seeds);

}  // namespace stepup
