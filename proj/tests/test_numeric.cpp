#include <doctest.h>

#include "oracles.hpp"
#include "stepup/numeric.hpp"
#include "stepup/params.hpp"
#include "stepup/rng.hpp"

using namespace stepup;

TEST_SUITE_BEGIN("numeric");

TEST_CASE("bit extracts binary digits, 1-indexed") {
    CHECK(bit_at(BigNat(5), 1) == 1);  // 101
    CHECK(bit_at(BigNat(5), 2) == 0);
    CHECK(bit_at(BigNat(8), 4) == 1);  // 1000
    CHECK(bit_at(BigNat(8), 3) == 0);
    CHECK_THROWS_AS(bit_at(BigNat(5), 0), std::domain_error);
}

TEST_CASE("delta matches the Figure-1 values") {
    CHECK(delta(BigNat(0), BigNat(1)) == 1);
    CHECK(delta(BigNat(6), BigNat(7)) == 1);
    CHECK(delta(BigNat(0), BigNat(3)) == 2);
    CHECK(delta(BigNat(5), BigNat(6)) == 2);
    CHECK(delta(BigNat(3), BigNat(4)) == 3);
    CHECK(delta(BigNat(2), BigNat(7)) == 3);
    CHECK(delta(BigNat(7), BigNat(7)) == 0);
}

TEST_CASE("delta agrees with the definition-level scan") {
    Rng rng = make_rng(42);
    for (int t = 0; t < 5000; ++t) {
        std::uint64_t x = rng() >> (t % 40);
        std::uint64_t y = rng() >> (t % 37);
        CHECK(delta(BigNat(x), BigNat(y)) == oracle::delta_scan(x, y));
        CHECK(delta(BigNat(x), BigNat(y)) == delta(BigNat(y), BigNat(x)));
    }
    // fast path used by the exhaustive tables agrees too
    for (int t = 0; t < 5000; ++t) {
        std::uint64_t x = rng() & 0xffff, y = rng() & 0xffff;
        CHECK(delta_small(x, y) == oracle::delta_scan(x, y));
    }
}

TEST_CASE("delta on multi-word integers") {
    BigNat a = BigNat(1) << 130;
    BigNat b = (BigNat(1) << 130) + 1;
    CHECK(delta(a, b) == 1);
    CHECK(delta(BigNat(0), a) == 131);
}

TEST_CASE("delta_vector on sorted multisets") {
    auto dv = delta_vector({BigNat(0), BigNat(3), BigNat(4)});
    REQUIRE(dv.size() == 2);
    CHECK(dv[0] == 2);
    CHECK(dv[1] == 3);

    dv = delta_vector({BigNat(5), BigNat(5), BigNat(5)});
    CHECK(dv == std::vector<BigNat>{BigNat(0), BigNat(0)});

    // {1,2,4,8}: values verified by the definition-level scan
    dv = delta_vector({BigNat(1), BigNat(2), BigNat(4), BigNat(8)});
    REQUIRE(dv.size() == 3);
    CHECK(dv[0] == oracle::delta_scan(1, 2));
    CHECK(dv[1] == oracle::delta_scan(2, 4));
    CHECK(dv[2] == oracle::delta_scan(4, 8));
    CHECK(dv == std::vector<BigNat>{BigNat(2), BigNat(3), BigNat(4)});

    // unsorted input is sorted defensively
    CHECK(delta_vector({BigNat(4), BigNat(0), BigNat(3)}) ==
          std::vector<BigNat>{BigNat(2), BigNat(3)});
    CHECK_THROWS_AS(delta_vector({}), std::invalid_argument);
}

TEST_CASE("tower") {
    CHECK(tower(1, BigNat(5)) == 5);
    CHECK(tower(2, BigNat(10)) == 1024);
    CHECK(tower(3, BigNat(2)) == 16);
    CHECK(tower(4, BigNat(2)) == 65536);
    for (int k = 2; k <= 4; ++k) {
        for (int x = 0; x <= 4; ++x)
            CHECK(tower(k, BigNat(x)) == BigNat(1) << tower(k - 1, BigNat(x)).convert_to<unsigned>());
    }
    CHECK_THROWS_AS(tower(4, BigNat(5)), SizeBudgetError);  // 2^65536 bits
    CHECK_THROWS_AS(tower(0, BigNat(1)), std::domain_error);
}

TEST_CASE("color_universe follows the M_k recursion") {
    ParamSet p = ParamSet::desk(2, 10);
    p.base_exponent_coeff = Rational(1, 1);  // coeff*m = 10
    CHECK(color_universe(2, p) == 1024);

    ParamSet q = ParamSet::desk(3, 3);
    q.base_exponent_coeff = Rational(1, 1);  // coeff*m = 3 -> M_2 = 8
    CHECK(color_universe(2, q) == 8);
    CHECK(color_universe(3, q) == 128);  // 2^(8-1)

    ParamSet r = ParamSet::desk(2, 1);
    r.base_exponent_coeff = Rational(1, 1);
    CHECK(color_universe(2, r) == 2);

    // exponent floors at 1
    ParamSet tiny = ParamSet::desk(2, 1);
    tiny.base_exponent_coeff = Rational(1, 100);
    CHECK(color_universe(2, tiny) == 2);

    // k = 5 with coeff*m = 2: 4, 8, 128, 2^127
    ParamSet five = ParamSet::desk(5, 2);
    five.base_exponent_coeff = Rational(1, 1);
    CHECK(color_universe(4, five) == 128);
    CHECK(color_universe(5, five) == BigNat(1) << 127);

    // budget overflow reports the tower height symbolically
    ParamSet big = ParamSet::desk(4, 5);
    big.base_exponent_coeff = Rational(8, 1);  // M_3 = 2^(2^40 - 1)
    try {
        color_universe(4, big);
        FAIL("expected SizeBudgetError");
    } catch (const SizeBudgetError& e) {
        CHECK(std::string(e.what()).find("tw_") != std::string::npos);
    }
}

TEST_CASE("check_delta_properties at small ranges") {
    auto rep = check_delta_properties(8);
    CHECK(rep.pass);
    rep = check_delta_properties(2);
    CHECK(rep.pass);
    rep = check_delta_properties(256, 64);
    CHECK(rep.pass);
    CHECK_THROWS_AS(check_delta_properties(1), std::invalid_argument);
}

TEST_CASE("paramset profiles and feasibility") {
    ParamSet desk = ParamSet::desk(3, 4);
    desk.validate();
    CHECK(color_universe(2, desk) == 8);    // coeff = 3/m
    CHECK(color_universe(3, desk) == 128);

    ParamSet paper = ParamSet::paper(3, 4);
    paper.validate();
    CHECK(paper.stop_divisor == 2000);
    CHECK(paper.gap_divisor == 1024);
    CHECK(paper.alpha_base == 100000);
    CHECK(paper.epsilon == Rational(1, 1000000000000000000LL));  // 10^-18 at k = 3

    ParamSet bad = desk;
    bad.gap_divisor = 4;  // 2/4 + 1/2000 >= 1/256
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    // b_u chain: alpha_base^(-k-u+4) * n/m
    ParamSet chain = ParamSet::desk(3, 1);
    chain.alpha_base = 4;
    CHECK(chain.b_u(3, 4096) == 256);  // 4^-2 * 4096
    CHECK(chain.b_u(2, 4096) == 1024); // 4^-1 * 4096
    CHECK(chain.n_u(3, 4096) == 4096);
    CHECK(chain.n_u(2, 4096) == 1024);
}

TEST_SUITE_END();
