#include <doctest.h>

#include <sstream>

#include "stepup/graph.hpp"
#include "stepup/hypergraph.hpp"

using namespace stepup;

TEST_SUITE_BEGIN("graphs");

TEST_CASE("graph basics and io") {
    Graph g(4);
    g.add_edge(0, 1);
    g.add_edge(2, 1);
    g.add_edge(3, 0);
    CHECK(g.edge_count() == 3);
    CHECK(g.has_edge(1, 2));
    CHECK_FALSE(g.has_edge(0, 2));
    CHECK(g.max_degree() == 2);
    CHECK(g.is_connected());
    CHECK_THROWS_AS(g.add_edge(1, 1), std::invalid_argument);
    CHECK_THROWS_AS(g.add_edge(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(g.add_edge(0, 4), std::out_of_range);

    std::ostringstream os;
    g.save(os);
    CHECK(os.str().rfind("graph n=4 e=3\n", 0) == 0);
    std::istringstream is(os.str());
    Graph back = Graph::load(is);
    std::ostringstream os2;
    back.save(os2);
    CHECK(os.str() == os2.str());
}

TEST_CASE("graph load rejects malformed input") {
    std::istringstream bad1("graph n=2 e=1\n0\n");
    CHECK_THROWS(Graph::load(bad1));
    std::istringstream bad2("nonsense\n");
    CHECK_THROWS(Graph::load(bad2));
    std::istringstream bad3("graph n=2 e=2\n0 1\n");
    CHECK_THROWS(Graph::load(bad3));
}

TEST_CASE("hypergraph basics and io") {
    Hypergraph h(5, 3);
    CHECK(h.add_edge({2, 0, 1}));
    CHECK_FALSE(h.add_edge({0, 1, 2}));  // duplicate ignored
    CHECK(h.add_edge({2, 3, 4}));
    CHECK(h.has_edge({1, 0, 2}));
    CHECK(h.max_degree() == 2);
    CHECK_THROWS_AS(h.add_edge({0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(h.add_edge({0, 0, 1}), std::invalid_argument);

    std::ostringstream os;
    h.save(os);
    std::istringstream is(os.str());
    Hypergraph back = Hypergraph::load(is);
    std::ostringstream os2;
    back.save(os2);
    CHECK(os.str() == os2.str());
    CHECK(back.edge_count() == 2);
}

TEST_CASE("hypergraph union") {
    Hypergraph a(4, 2), b(4, 2);
    a.add_edge({0, 1});
    b.add_edge({0, 1});
    b.add_edge({2, 3});
    auto u = a.union_with(b);
    CHECK(u.edge_count() == 2);
}

TEST_SUITE_END();
