#include <doctest.h>

#include <sstream>

#include "stepup/expander.hpp"
#include "stepup/template_family.hpp"

using namespace stepup;

TEST_SUITE_BEGIN("template");

TEST_CASE("generation at the audit scale") {
    ParamSet p = ParamSet::desk(3, 4);
    auto t = gen_template(2000, 40, Rational(1, 10), p, 1);
    CHECK(t.blocks.size() >= 1);
    CHECK(t.attempts_used <= 5);
    for (const auto& b : t.blocks) CHECK(b.size() == 40);
    CHECK(t.max_pairwise_intersection() < 4);  // eps*s = 4
    CHECK(t.max_multiplicity() <= t.degree_cap);
}

TEST_CASE("generation preconditions") {
    ParamSet p = ParamSet::desk(3, 4);
    CHECK_THROWS_AS(gen_template(60, 40, Rational(1, 10), p, 1), std::invalid_argument);
    CHECK_THROWS_AS(gen_template(2000, 1, Rational(1, 10), p, 1), std::invalid_argument);
}

TEST_CASE("determinism per seed") {
    ParamSet p = ParamSet::desk(3, 4);
    auto a = gen_template(1000, 25, Rational(1, 10), p, 9);
    auto b = gen_template(1000, 25, Rational(1, 10), p, 9);
    CHECK(a.blocks == b.blocks);
}

TEST_CASE("file round-trip with placements") {
    ParamSet p = ParamSet::desk(3, 4);
    auto t = gen_template(1000, 25, Rational(1, 10), p, 4);
    auto f = gen_random_regular(25, 6, 2);
    place_copies(t, f, 8);
    std::ostringstream os;
    t.save(os);
    std::istringstream is(os.str());
    auto back = TemplateFamily::load(is);
    CHECK(back.blocks == t.blocks);
    CHECK(back.placements == t.placements);
    std::ostringstream os2;
    back.save(os2);
    CHECK(os.str() == os2.str());
}

TEST_CASE("verify: whole-ground-set A has zero correlated blocks") {
    TemplateFamily t;
    t.n = 100;
    t.s = 10;
    t.degree_cap = 1;
    t.eps = Rational(1, 10);
    for (int i = 0; i < 10; ++i) {
        std::vector<int> block;
        for (int j = 0; j < 10; ++j) block.push_back(10 * i + j);
        t.blocks.push_back(block);
    }
    t.placements.assign(10, {});
    // A = [n] gives |e cap A| = s exactly; only the other adversaries and
    // random draws can correlate, and pairwise-disjoint equal blocks make the
    // exact audits pass
    TemplateAuditBudget budget;
    budget.random_sets = 0;
    auto rep = verify_template(t, Rational(1, 10), budget);
    // the block-union adversary correlates its own constituents: with 10
    // blocks allowed correlated count is eps*e(T) = 1, a union of >= 2 whole
    // blocks must fail
    CHECK_FALSE(rep.pass);
    bool exact_ok = true;
    for (const auto& item : rep.items) {
        if (item.name == "block-sizes" || item.name == "pairwise-intersection" ||
            item.name == "degree-cap")
            exact_ok = exact_ok && item.pass;
    }
    CHECK(exact_ok);
}

TEST_CASE("verify: constructed family, single-block correlation arithmetic") {
    // one block fully inside A, |A| = eps*n: deviation s - |A| s / n = 9 > 1
    TemplateFamily t;
    t.n = 100;
    t.s = 10;
    t.degree_cap = 1;
    t.eps = Rational(1, 10);
    std::vector<int> block;
    for (int j = 0; j < 10; ++j) block.push_back(j);
    t.blocks.push_back(block);
    t.placements.assign(1, {});
    TemplateAuditBudget budget;
    budget.random_sets = 0;
    auto rep = verify_template(t, Rational(1, 10), budget);
    // a single block: fraction 1/1 > eps -> fail flagged
    CHECK_FALSE(rep.pass);
}

TEST_SUITE_END();
