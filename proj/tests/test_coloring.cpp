#include <doctest.h>

#include <sstream>

#include "stepup/coloring.hpp"
#include "stepup/numeric.hpp"
#include "stepup/rng.hpp"

using namespace stepup;

TEST_SUITE_BEGIN("coloring");

TEST_CASE("base coloring generation is deterministic and size-checked") {
    auto a = BaseColoring::generate(2, 7);
    auto b = BaseColoring::generate(2, 7);
    CHECK(a.color(0, 1) == b.color(0, 1));
    CHECK_THROWS_AS(BaseColoring::generate(1, 0), std::invalid_argument);

    auto c = BaseColoring::generate(16, 1);
    CHECK(c.pair_count() == 120);
    double red_frac = static_cast<double>(c.red_count()) / 120.0;
    CHECK(red_frac >= 0.2);
    CHECK(red_frac <= 0.8);
}

TEST_CASE("phi2 diagonal convention and range checks") {
    auto c = BaseColoring::generate(8, 3);
    CHECK(c.color(3, 3) == TwoColor::red);
    CHECK(c.color(0, 1) == c.color(1, 0));
    CHECK_THROWS_AS(c.color(0, 8), std::out_of_range);
}

TEST_CASE("coloring file round-trips byte-stably and validates the bitmap") {
    auto c = BaseColoring::generate(16, 9);
    c.set_coeff(Rational(3, 4));
    std::ostringstream os;
    c.save(os);
    std::istringstream is(os.str());
    auto back = BaseColoring::load(is);
    CHECK(back == c);
    std::ostringstream os2;
    back.save(os2);
    CHECK(os.str() == os2.str());

    // a corrupted bitmap is rejected
    std::string text = os.str();
    auto nl = text.find('\n');
    std::string corrupted = text;
    corrupted[nl + 1] = corrupted[nl + 1] == '0' ? '1' : '0';
    std::istringstream bad(corrupted);
    CHECK_THROWS_AS(BaseColoring::load(bad), std::invalid_argument);
}

namespace {

SteppedColoring make_sc(int k, int coeff_times_m, std::uint64_t seed) {
    ParamSet p = ParamSet::desk(k, 1);
    p.base_exponent_coeff = Rational(coeff_times_m, 1);
    return SteppedColoring(k, p, seed);
}

}  // namespace

TEST_CASE("phi3 case table") {
    auto sc = make_sc(3, 3, 11);  // M_2 = 8, M_3 = 128

    // all equal -> C1, even though delta pair would land in the >= branch
    CHECK(sc.color({BigNat(5), BigNat(5), BigNat(5)}) == FourColor::C1);
    CHECK(sc.color({BigNat(0), BigNat(0), BigNat(0)}) == FourColor::C1);

    // {0,1,3}: deltas (1, 2), increasing -> C1/C2 by phi2(1,2)
    FourColor got = sc.color({BigNat(0), BigNat(1), BigNat(3)});
    if (sc.pair(BigNat(1), BigNat(2)) == TwoColor::red)
        CHECK(got == FourColor::C1);
    else
        CHECK(got == FourColor::C2);

    // mirrored multiset {0,2,3}: deltas (2, 1), decreasing -> C3/C4
    got = sc.color({BigNat(0), BigNat(2), BigNat(3)});
    if (sc.pair(BigNat(2), BigNat(1)) == TwoColor::red)
        CHECK(got == FourColor::C3);
    else
        CHECK(got == FourColor::C4);

    CHECK_THROWS_AS(sc.color({BigNat(0), BigNat(1), BigNat(200)}), std::out_of_range);
}

TEST_CASE("phi4 monotone recursion and argmax branches") {
    auto sc = make_sc(4, 3, 11);  // M_2 = 8, M_3 = 128, M_4 = 2^127

    // {0,3,4,5}: deltas (2,3,1) non-monotone, argmax at 2 -> C2
    CHECK(sc.color({BigNat(0), BigNat(3), BigNat(4), BigNat(5)}) == FourColor::C2);

    // {0,4,5,7}: deltas (3,1,2) non-monotone, argmax at 1 -> C1
    CHECK(sc.color({BigNat(0), BigNat(4), BigNat(5), BigNat(7)}) == FourColor::C1);

    // {0,4,6,7}: deltas (3,2,1) monotone -> phi3 on the delta multiset
    CHECK(sc.color({BigNat(0), BigNat(4), BigNat(6), BigNat(7)}) ==
          sc.color({BigNat(1), BigNat(2), BigNat(3)}));

    // all-equal bottoms out at phi3({0,0,0}) = C1
    CHECK(sc.color({BigNat(9), BigNat(9), BigNat(9), BigNat(9)}) == FourColor::C1);
}

TEST_CASE("phi_k fuzz: permutation invariance, disjointness, recursion") {
    for (int k : {3, 4, 5}) {
        int cm = k == 3 ? 3 : 2;  // keep universes representable
        auto sc = make_sc(k, cm, 5);
        BigNat M = sc.universe(k);
        Rng rng = make_rng(100 + static_cast<std::uint64_t>(k));
        int monotone_hits = 0;
        for (int t = 0; t < 2000; ++t) {
            std::vector<BigNat> xs;
            for (int i = 0; i < k; ++i) {
                BigNat v = 0;
                // uniform below M via 64-bit chunks
                std::int64_t bits = static_cast<std::int64_t>(boost::multiprecision::msb(M));
                do {
                    v = 0;
                    for (std::int64_t got = 0; got < bits; got += 64) v = (v << 64) | rng();
                    v &= (BigNat(1) << static_cast<unsigned>(bits)) - 1;
                } while (v >= M);
                xs.push_back(v);
            }
            FourColor base = sc.color(xs);
            // permutation invariance
            std::vector<BigNat> shuffled = xs;
            shuffle_vec(shuffled, rng);
            CHECK(sc.color(shuffled) == base);

            std::vector<BigNat> sorted = xs;
            std::sort(sorted.begin(), sorted.end());
            std::vector<BigNat> ds;
            for (int i = 0; i + 1 < k; ++i)
                ds.push_back(delta(sorted[static_cast<std::size_t>(i)],
                                   sorted[static_cast<std::size_t>(i + 1)]));
            bool all_equal = sorted.front() == sorted.back();
            if (k == 3 && !all_equal) {
                // delta_1 = delta_2 only when all three inputs are equal
                CHECK(ds[0] != ds[1]);
            }
            if (!all_equal) {
                // unique argmax
                BigNat mx = ds[0];
                for (const auto& d : ds) mx = std::max(mx, d);
                int count = 0;
                for (const auto& d : ds)
                    if (d == mx) ++count;
                CHECK(count == 1);
            }
            bool nondec = true, noninc = true;
            for (std::size_t i = 0; i + 1 < ds.size(); ++i) {
                if (ds[i] > ds[i + 1]) nondec = false;
                if (ds[i] < ds[i + 1]) noninc = false;
            }
            if (k >= 4 && (nondec || noninc)) {
                ++monotone_hits;
                CHECK(sc.color(ds) == base);
            }
        }
        if (k >= 4) CHECK(monotone_hits > 0);
    }
}

TEST_CASE("lifted coloring projects first coordinates") {
    auto sc = make_sc(3, 3, 11);
    // all first coordinates equal -> C1
    CHECK(sc.lifted({{BigNat(5), 0}, {BigNat(5), 1}, {BigNat(5), 2}}, 3) == FourColor::C1);
    // projection contract
    CHECK(sc.lifted({{BigNat(0), 0}, {BigNat(1), 0}, {BigNat(3), 0}}, 1) ==
          sc.color({BigNat(0), BigNat(1), BigNat(3)}));
    // duplicate pairs rejected
    CHECK_THROWS_AS(sc.lifted({{BigNat(0), 0}, {BigNat(0), 0}, {BigNat(1), 0}}, 1),
                    std::invalid_argument);
}

TEST_CASE("memoized evaluation is semantically invisible") {
    ParamSet p = ParamSet::desk(4, 1);
    p.base_exponent_coeff = Rational(3, 1);
    SteppedColoring plain(4, p, 21, false);
    SteppedColoring memo(4, p, 21, true);
    Rng rng = make_rng(77);
    for (int t = 0; t < 500; ++t) {
        std::vector<BigNat> xs;
        for (int i = 0; i < 4; ++i) xs.push_back(BigNat(uniform_below(rng, 1 << 20)));
        CHECK(plain.color(xs) == memo.color(xs));
    }
}

TEST_CASE("weight-inequality verifier") {
    // monochromatic coloring: the 0/1 weight vector on any m vertices puts
    // the whole pair mass in one class -> must FAIL
    {
        std::optional<BaseColoring> mono;
        for (std::uint64_t seed = 0; seed < 2000 && !mono; ++seed) {
            auto c = BaseColoring::generate(4, seed);
            if (c.red_count() == 0 || c.red_count() == c.pair_count()) mono = c;
        }
        REQUIRE(mono.has_value());
        WeightSearchBudget b;
        b.random_trials = 0;
        b.ascent_starts = 0;
        auto rep = verify_base_coloring(*mono, 4, b);
        CHECK_FALSE(rep.pass);
    }

    // s = 6, m = 6 exhaustive: the unique support-6 0/1 vector is all-ones;
    // pass iff neither color class has >= 0.51 * 15 = 7.65 -> >= 8 edges
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        auto c = BaseColoring::generate(6, seed);
        WeightSearchBudget b;
        b.random_trials = 0;
        b.ascent_starts = 0;
        auto rep = verify_base_coloring(c, 6, b);
        std::int64_t red = c.red_count();
        std::int64_t blue = c.pair_count() - red;
        bool expect_pass = red < 8 && blue < 8;
        CHECK(rep.pass == expect_pass);
    }

    // random coloring at s = 64, m = 16: expected PASS under all strategies
    auto c = BaseColoring::generate(64, 5);
    WeightSearchBudget b;
    b.random_trials = 500;
    b.ascent_starts = 6;
    b.ascent_iters = 200;
    b.seed = 3;
    auto rep = verify_base_coloring(c, 16, b);
    CHECK(rep.pass);

    CHECK_THROWS_AS(verify_base_coloring(c, 65, b), std::invalid_argument);
}

TEST_SUITE_END();
