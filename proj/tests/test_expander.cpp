#include <doctest.h>

#include <cmath>

#include "stepup/expander.hpp"

using namespace stepup;

TEST_SUITE_BEGIN("expander");

TEST_CASE("regular generation: structure and determinism") {
    auto g = gen_random_regular(4, 2, 1);
    CHECK(g.edge_count() == 4);
    int d = 0;
    CHECK(g.is_regular(&d));
    CHECK(d == 2);

    auto big = gen_random_regular(500, 12, 3);
    CHECK(big.edge_count() == 3000);
    CHECK(big.is_regular(&d));
    CHECK(d == 12);

    auto again = gen_random_regular(500, 12, 3);
    CHECK(big.edges() == again.edges());

    CHECK_THROWS_AS(gen_random_regular(4, 4, 0), std::invalid_argument);
    CHECK_THROWS_AS(gen_random_regular(5, 3, 0), std::invalid_argument);  // odd stubs
}

TEST_CASE("lambda2 on known spectra") {
    // K_6: spectrum {5, -1 x5} -> 1.0
    Graph k6(6);
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j) k6.add_edge(i, j);
    CHECK(lambda2(k6) == doctest::Approx(1.0).epsilon(1e-8));

    // C_4: eigenvalues 2cos(2 pi j / 4) = {2, 0, 0, -2} -> 2.0
    Graph c4(4);
    c4.add_edge(0, 1);
    c4.add_edge(1, 2);
    c4.add_edge(2, 3);
    c4.add_edge(3, 0);
    CHECK(lambda2(c4) == doctest::Approx(2.0).epsilon(1e-8));

    Graph irregular(3);
    irregular.add_edge(0, 1);
    CHECK_THROWS_AS(lambda2(irregular), std::invalid_argument);
}

TEST_CASE("random regular graphs sit near the Ramanujan bound") {
    auto g = gen_random_regular(500, 12, 7);
    double l = lambda2(g);
    CHECK(l <= 2.0 * std::sqrt(11.0) + 1.0);
}

TEST_CASE("neighbor expansion exact mode") {
    Graph k6(6);
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j) k6.add_edge(i, j);
    // every vertex has >= 1 neighbor in any 3-set
    auto rep = verify_neighbor_expansion(k6, Rational(1, 2), 1, ExpansionMode::exact);
    CHECK(rep.pass);

    Graph empty6(6);
    auto rep2 = verify_neighbor_expansion(empty6, Rational(1, 2), 1, ExpansionMode::exact);
    CHECK_FALSE(rep2.pass);
}

TEST_CASE("neighbor expansion sampled mode with mixing slack") {
    auto g = gen_random_regular(500, 12, 11);
    ExpansionBudget budget;
    budget.set_trials = 60;
    budget.mixing_pairs = 300;
    budget.seed = 5;
    auto rep = verify_neighbor_expansion(g, Rational(1, 10), 3, ExpansionMode::sampled, budget);
    CHECK(rep.pass);
}

TEST_SUITE_END();
