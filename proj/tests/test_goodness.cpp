#include <doctest.h>

#include "stepup/goodness.hpp"
#include "stepup/rng.hpp"

using namespace stepup;

namespace {

ParamSet gm_params(int m) {
    ParamSet p = ParamSet::desk(3, m);
    p.base_exponent_coeff = Rational(1, 1);  // s = 2^m parts available
    return p;
}

Graph complete_graph(int n) {
    Graph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

}  // namespace

TEST_SUITE_BEGIN("goodness");

TEST_CASE("empty graphs are not in G_m (exact)") {
    for (int n = 3; n <= 9; ++n) {
        auto res = gm_member(Graph(n), 3, gm_params(3), GmMode::exact);
        CHECK(res.definitive);
        CHECK_FALSE(res.member);
        CHECK(res.witness.has_value());
    }
}

TEST_CASE("K_6 at m = 3 is in G_m (exact)") {
    auto res = gm_member(complete_graph(6), 3, gm_params(3), GmMode::exact);
    CHECK(res.definitive);
    CHECK(res.member);
    // parts of size <= 2: worst cross mass (36 - 3*4)/2 = 12 > 0.55 * 15
}

TEST_CASE("vacuous membership when no partition fits") {
    // n = 2, m = 3: parts of size <= 0 cannot cover
    auto res = gm_member(Graph(2), 3, gm_params(3), GmMode::exact);
    CHECK(res.vacuous);
    CHECK(res.member);
}

TEST_CASE("edge monotonicity on a small corpus") {
    Rng rng = make_rng(31);
    for (int n = 4; n <= 8; ++n) {
        for (int trial = 0; trial < 4; ++trial) {
            Graph g(n);
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    if (uniform_below(rng, 100) < 55) g.add_edge(i, j);
            auto base = gm_member(g, 3, gm_params(3), GmMode::exact);
            // add a few edges
            Graph sup = g;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    if (!sup.has_edge(i, j) && uniform_below(rng, 100) < 50) sup.add_edge(i, j);
            auto more = gm_member(sup, 3, gm_params(3), GmMode::exact);
            if (base.member) CHECK(more.member);
        }
    }
}

TEST_CASE("sampled mode accepts a dense random graph") {
    Rng rng = make_rng(8);
    int n = 200;
    Graph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (uniform01(rng) < 0.2) g.add_edge(i, j);
    GmBudget budget;
    budget.random_partitions = 300;
    budget.adversarial_partitions = 20;
    budget.seed = 4;
    auto res = gm_member(g, 5, gm_params(5), GmMode::sampled, budget);
    CHECK_FALSE(res.definitive);
    CHECK(res.member);
}

TEST_CASE("derived hypergraph definition") {
    Hypergraph h(5, 3);
    h.add_edge({1, 2, 3});
    {
        auto d = derived_hypergraph(h, {1, 2}, {{3}});
        CHECK(d.hg.uniformity() == 2);
        CHECK(d.hg.edge_count() == 1);
        CHECK(d.vertices == std::vector<int>{1, 2});
        CHECK(d.hg.has_edge({0, 1}));  // relabeled {1,2}
    }
    {
        auto d = derived_hypergraph(h, {1, 2}, {{4}});
        CHECK(d.hg.edge_count() == 0);
    }
    {
        // all 3-subsets of [5], U = {0,1}, W1 = {2,3}
        Hypergraph full(5, 3);
        for (int a = 0; a < 5; ++a)
            for (int b = a + 1; b < 5; ++b)
                for (int c = b + 1; c < 5; ++c) full.add_edge({a, b, c});
        auto d = derived_hypergraph(full, {0, 1}, {{2, 3}});
        CHECK(d.hg.edge_count() == 1);
        CHECK(d.hg.has_edge({0, 1}));
    }
    CHECK_THROWS_AS(derived_hypergraph(h, {1, 2}, {{2}}), std::invalid_argument);
}

TEST_CASE("gen_good_kgraph: degree bound and determinism") {
    ParamSet p = gm_params(4);
    p.goodness_C = 50;
    auto h = gen_good_kgraph(60, 3, 4, p, 5);
    CHECK(h.vertex_count() == 60);
    CHECK(h.edge_count() > 0);
    CHECK(h.max_degree() <= 50 * 4 / 2);
    auto h2 = gen_good_kgraph(60, 3, 4, p, 5);
    CHECK(h.edges() == h2.edges());
}

TEST_CASE("is_alpha_m_good flags the empty hypergraph") {
    Hypergraph empty(24, 3);
    ParamSet p = gm_params(3);
    GoodnessBudget budget;
    budget.tuple_trials = 4;
    budget.heredity_trials = 0;
    auto rep = is_alpha_m_good(empty, Rational(1, 4), 3, p, GmMode::sampled, budget);
    CHECK_FALSE(rep.pass);
}

TEST_CASE("is_alpha_m_good on a random good graph (sampled)") {
    ParamSet p = gm_params(5);
    p.goodness_C = 50;
    auto h = gen_good_kgraph(120, 3, 5, p, 9);
    GoodnessBudget budget;
    budget.tuple_trials = 6;
    budget.heredity_trials = 1;
    budget.gm.random_partitions = 150;
    budget.gm.adversarial_partitions = 10;
    budget.seed = 2;
    auto rep = is_alpha_m_good(h, Rational(1, 4), 5, p, GmMode::sampled, budget);
    CHECK(rep.pass);
}

TEST_SUITE_END();
