#include "stepup/bundle.hpp"

#include <fstream>
#include <stdexcept>

#include "stepup/rational.hpp"

namespace stepup {

ConstructionBundle assemble(int n, int k, int m, const ParamSet& params,
                            const BundleSeeds& seeds) {
    params.validate();
    ConstructionBundle b;
    b.params = params;
    b.seeds = seeds;
    b.audits.suite = "bundle-assembly";
    b.audits.profile = params.profile;

    int s = static_cast<int>(floor_to_int(params.s_coeff * Rational(m, 1)));
    if (s < 4) throw std::invalid_argument("assemble: block size s_coeff*m too small");
    int d = params.expander_degree;
    if (d >= s) throw std::invalid_argument("assemble: expander degree must be below block size");

    try {
        b.h_random = gen_good_kgraph(n, k, m, params, seeds.random_part);
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("assemble[random-part]: ") + e.what());
    }
    b.audits.add_context("H_R_edges", std::to_string(b.h_random.edge_count()));
    b.audits.add_context("H_R_max_degree", std::to_string(b.h_random.max_degree()));

    try {
        b.expander = gen_random_regular(s, d, seeds.expander);
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("assemble[expander]: ") + e.what());
    }
    auto exp_rep = verify_neighbor_expansion(b.expander, params.epsilon, k,
                                             ExpansionMode::sampled,
                                             ExpansionBudget{50, 100, seeds.expander});
    b.audits.add(CheckItem{"expander-F1", exp_rep.pass, exp_rep.pass ? "pass" : "fail",
                           "F1 neighbor expansion", ""});

    try {
        b.blocks = gen_template(n, s, params.epsilon, params, seeds.template_blocks);
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("assemble[template]: ") + e.what());
    }
    place_copies(b.blocks, b.expander, seeds.placement);
    b.audits.add_context("template_blocks", std::to_string(b.blocks.blocks.size()));

    try {
        b.h_expander = gadget_family(k, n, b.expander, b.blocks.placements);
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("assemble[gadgets]: ") + e.what());
    }
    b.audits.add_context("H_E_edges", std::to_string(b.h_expander.edge_count()));
    b.audits.add_context("H_E_max_degree", std::to_string(b.h_expander.max_degree()));

    b.h = b.h_random.union_with(b.h_expander);
    b.audits.add_context("H_edges", std::to_string(b.h.edge_count()));

    // union + degree audits
    bool union_exact = true;
    for (const auto& e : b.h.edges())
        if (!b.h_random.has_edge(e) && !b.h_expander.has_edge(e)) union_exact = false;
    if (b.h.edge_count() > b.h_random.edge_count() + b.h_expander.edge_count()) union_exact = false;
    b.audits.add(CheckItem{"edge-union", union_exact, "E(H) = E(H_R) u E(H_E)", "exact", ""});

    int dH = b.h.max_degree();
    int dsum = b.h_random.max_degree() + b.h_expander.max_degree();
    b.audits.add(CheckItem{"degree-union-bound", dH <= dsum, std::to_string(dH),
                           "<= " + std::to_string(dsum), ""});
    return b;
}

void ConstructionBundle::save_all(const std::string& prefix) const {
    {
        std::ofstream os(prefix + ".params");
        params.save(os);
    }
    {
        std::ofstream os(prefix + ".expander.graph");
        expander.save(os);
    }
    {
        std::ofstream os(prefix + ".template");
        blocks.save(os);
    }
    {
        std::ofstream os(prefix + ".hr.hg");
        h_random.save(os);
    }
    {
        std::ofstream os(prefix + ".he.hg");
        h_expander.save(os);
    }
    {
        std::ofstream os(prefix + ".h.hg");
        h.save(os);
    }
}

}  // namespace stepup
