#include "stepup/numeric.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

#include "stepup/params.hpp"

namespace stepup {

namespace mp = boost::multiprecision;

int bit_at(const BigNat& x, std::int64_t i) {
    if (i < 1) throw std::domain_error("bit(x, i) requires i >= 1");
    if (x < 0) throw std::domain_error("bit(x, i) requires x >= 0");
    return mp::bit_test(x, static_cast<unsigned>(i - 1)) ? 1 : 0;
}

BigNat delta(const BigNat& x, const BigNat& y) {
    if (x < 0 || y < 0) throw std::domain_error("delta requires nonnegative arguments");
    if (x == y) return 0;
    // highest differing 1-indexed position = bit length of x XOR y
    BigNat d = x ^ y;
    return BigNat(mp::msb(d)) + 1;
}

std::vector<BigNat> delta_vector(std::vector<BigNat> xs) {
    if (xs.empty()) throw std::invalid_argument("delta_vector: empty input");
    std::stable_sort(xs.begin(), xs.end());
    std::vector<BigNat> out;
    out.reserve(xs.size() - 1);
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) out.push_back(delta(xs[i], xs[i + 1]));
    return out;
}

BigNat tower(int k, const BigNat& x, const SizeBudget& budget) {
    if (k < 1) throw std::domain_error("tower requires k >= 1");
    if (x < 0) throw std::domain_error("tower requires x >= 0");
    BigNat v = x;
    for (int level = 2; level <= k; ++level) {
        if (v > budget.max_bits) {
            std::ostringstream msg;
            msg << "tower(" << k << ", " << x << ") exceeds the bit budget at height " << level
                << ": needs 2^" << v << " (tw_" << k << " scale, budget " << budget.max_bits
                << " bits)";
            throw SizeBudgetError(msg.str());
        }
        BigNat next = BigNat(1) << static_cast<unsigned>(v.convert_to<std::int64_t>());
        v = std::move(next);
    }
    return v;
}

BigNat color_universe(int k, const ParamSet& params, const SizeBudget& budget) {
    if (k < 2) throw std::domain_error("color_universe requires k >= 2");
    // floor(coeff*m), clamped to at least 1; the paper implicitly assumes the
    // product is a positive integer
    Rational e2 = params.base_exponent_coeff * Rational(params.m, 1);
    std::int64_t exp2 = std::max<std::int64_t>(1, floor_to_int(e2));
    if (exp2 > budget.max_bits) {
        std::ostringstream msg;
        msg << "M_2(m) = 2^" << exp2 << " exceeds the bit budget (" << budget.max_bits
            << " bits); M_" << k << " is tw_" << k << " scale";
        throw SizeBudgetError(msg.str());
    }
    BigNat v = BigNat(1) << static_cast<unsigned>(exp2);
    for (int level = 3; level <= k; ++level) {
        BigNat exp = v - 1;
        if (exp > budget.max_bits) {
            std::ostringstream msg;
            msg << "M_" << level << "(m) = 2^(M_" << level - 1
                << "-1) exceeds the bit budget; value is tw_" << level << " scale with exponent "
                << exp << " (budget " << budget.max_bits << " bits)";
            throw SizeBudgetError(msg.str());
        }
        v = BigNat(1) << static_cast<unsigned>(exp.convert_to<std::int64_t>());
    }
    return v;
}

namespace {

struct Range {
    std::int64_t lo, hi;
};

std::vector<Range> split_range(std::int64_t n, int parts) {
    std::vector<Range> out;
    std::int64_t chunk = (n + parts - 1) / parts;
    for (std::int64_t lo = 0; lo < n; lo += chunk) out.push_back({lo, std::min(n, lo + chunk)});
    return out;
}

}  // namespace

PropertyReport check_delta_properties(std::int64_t range_max, std::int64_t quad_range,
                                      int threads) {
    PropertyReport rep;
    rep.suite = "delta-properties";
    if (range_max < 2) throw std::invalid_argument("check_delta_properties: range_max >= 2");
    if (quad_range <= 0) quad_range = std::min<std::int64_t>(range_max, 1024);
    if (threads <= 0) threads = std::max(1u, std::thread::hardware_concurrency());
    rep.add_context("range_max", std::to_string(range_max));
    rep.add_context("quad_range", std::to_string(quad_range));
    rep.add_context("threads", std::to_string(threads));

    const std::int64_t n = range_max;
    std::vector<std::uint8_t> table(static_cast<std::size_t>(n) * n);
    {
        std::vector<std::thread> pool;
        for (auto [lo, hi] : split_range(n, threads)) {
            pool.emplace_back([&, lo = lo, hi = hi] {
                for (std::int64_t x = lo; x < hi; ++x) {
                    std::uint8_t* row = table.data() + static_cast<std::size_t>(x) * n;
                    for (std::int64_t y = 0; y < n; ++y)
                        row[y] = static_cast<std::uint8_t>(
                            delta_small(static_cast<std::uint64_t>(x), static_cast<std::uint64_t>(y)));
                }
            });
        }
        for (auto& t : pool) t.join();
    }

    // cross-check a diagonal stripe of the table against the BigNat path
    for (std::int64_t x = 0; x < std::min<std::int64_t>(n, 512); ++x) {
        std::int64_t y = (x * 2654435761u) % n;
        if (BigNat(table[static_cast<std::size_t>(x) * n + y]) != delta(BigNat(x), BigNat(y))) {
            rep.add_fail("table-consistency", "x=" + std::to_string(x) + " y=" + std::to_string(y),
                         "table == delta()");
            return rep;
        }
    }

    // P1 + symmetry + log bound over all pairs
    {
        std::int64_t pair_fail = -1;
        std::string pair_note;
        std::uint64_t pairs = 0;
        for (std::int64_t x = 0; x < n && pair_fail < 0; ++x) {
            const std::uint8_t* rx = table.data() + static_cast<std::size_t>(x) * n;
            for (std::int64_t y = x + 1; y < n; ++y) {
                ++pairs;
                int d = rx[y];
                int dyx = table[static_cast<std::size_t>(y) * n + x];
                if (d != dyx) {
                    pair_fail = x;
                    pair_note = "symmetry broken at (" + std::to_string(x) + "," +
                                std::to_string(y) + ")";
                    break;
                }
                // P1: x < y iff bit(x,d) < bit(y,d)
                int bx = (x >> (d - 1)) & 1;
                int by = (y >> (d - 1)) & 1;
                if (!(bx == 0 && by == 1)) {
                    pair_fail = x;
                    pair_note = "P1 broken at (" + std::to_string(x) + "," + std::to_string(y) + ")";
                    break;
                }
                int logb = static_cast<int>(std::ceil(std::log2(static_cast<double>(y) + 1.0)));
                if (d > logb) {
                    pair_fail = x;
                    pair_note = "log bound broken at (" + std::to_string(x) + "," +
                                std::to_string(y) + ")";
                    break;
                }
            }
        }
        if (pair_fail < 0)
            rep.add_pass("P1+symmetry+log(pairs)", std::to_string(pairs) + " pairs, 0 counterexamples",
                         "all pairs below " + std::to_string(n));
        else
            rep.add_fail("P1+symmetry+log(pairs)", pair_note, "no counterexample");
    }

    // P2 over x <= y <= z with x < z, threaded over x
    {
        std::atomic<std::int64_t> first_bad_x{n};
        std::vector<std::string> bad_note(static_cast<std::size_t>(threads));
        std::vector<std::thread> pool;
        auto ranges = split_range(n, threads);
        for (std::size_t ti = 0; ti < ranges.size(); ++ti) {
            pool.emplace_back([&, ti, r = ranges[ti]] {
                for (std::int64_t x = r.lo; x < r.hi; ++x) {
                    if (first_bad_x.load(std::memory_order_relaxed) < x) return;
                    const std::uint8_t* rx = table.data() + static_cast<std::size_t>(x) * n;
                    for (std::int64_t y = x; y < n; ++y) {
                        const std::uint8_t* ry = table.data() + static_cast<std::size_t>(y) * n;
                        const std::uint8_t d1 = rx[y];
                        std::int64_t z0 = (y == x) ? x + 1 : y;  // enforce x < z
                        std::uint8_t acc = 0;
                        for (std::int64_t z = z0; z < n; ++z)
                            acc |= static_cast<std::uint8_t>(ry[z] == d1);
                        if (acc) {
                            for (std::int64_t z = z0; z < n; ++z) {
                                if (ry[z] == d1) {
                                    std::int64_t prev = first_bad_x.load();
                                    while (x < prev && !first_bad_x.compare_exchange_weak(prev, x)) {
                                    }
                                    bad_note[ti] = "P2 broken at (" + std::to_string(x) + "," +
                                                   std::to_string(y) + "," + std::to_string(z) + ")";
                                    return;
                                }
                            }
                        }
                    }
                }
            });
        }
        for (auto& t : pool) t.join();
        if (first_bad_x.load() == n) {
            rep.add_pass("P2(triples)", "0 counterexamples",
                         "all x<=y<=z (x<z) below " + std::to_string(n));
        } else {
            std::string note;
            for (const auto& s : bad_note)
                if (!s.empty()) note = s;
            rep.add_fail("P2(triples)", note, "no counterexample");
        }
    }

    // P3 over sorted 4-tuples below quad_range, threaded over x1
    {
        const std::int64_t q = quad_range;
        std::atomic<std::int64_t> first_bad{q};
        std::vector<std::string> bad_note(static_cast<std::size_t>(threads));
        std::vector<std::thread> pool;
        auto ranges = split_range(q, threads);
        for (std::size_t ti = 0; ti < ranges.size(); ++ti) {
            pool.emplace_back([&, ti, r = ranges[ti]] {
                for (std::int64_t x1 = r.lo; x1 < r.hi; ++x1) {
                    if (first_bad.load(std::memory_order_relaxed) < x1) return;
                    const std::uint8_t* r1 = table.data() + static_cast<std::size_t>(x1) * n;
                    for (std::int64_t x2 = x1; x2 < q; ++x2) {
                        const std::uint8_t d12 = r1[x2];
                        const std::uint8_t* r2 = table.data() + static_cast<std::size_t>(x2) * n;
                        for (std::int64_t x3 = x2; x3 < q; ++x3) {
                            const std::uint8_t m123 =
                                std::max(d12, r2[x3]);
                            const std::uint8_t* r3 =
                                table.data() + static_cast<std::size_t>(x3) * n;
                            std::uint8_t diff = 0;
                            for (std::int64_t x4 = x3; x4 < q; ++x4) {
                                std::uint8_t d34 = r3[x4];
                                std::uint8_t mx = d34 > m123 ? d34 : m123;
                                diff |= static_cast<std::uint8_t>(r1[x4] ^ mx);
                            }
                            if (diff) {
                                for (std::int64_t x4 = x3; x4 < q; ++x4) {
                                    std::uint8_t mx = std::max(m123, r3[x4]);
                                    if (r1[x4] != mx) {
                                        std::int64_t prev = first_bad.load();
                                        while (x1 < prev &&
                                               !first_bad.compare_exchange_weak(prev, x1)) {
                                        }
                                        bad_note[ti] = "P3 broken at (" + std::to_string(x1) + "," +
                                                       std::to_string(x2) + "," +
                                                       std::to_string(x3) + "," +
                                                       std::to_string(x4) + ")";
                                        return;
                                    }
                                }
                            }
                        }
                    }
                }
            });
        }
        for (auto& t : pool) t.join();
        if (first_bad.load() == q) {
            rep.add_pass("P3(quads)", "0 counterexamples",
                         "all sorted 4-tuples below " + std::to_string(q));
        } else {
            std::string note;
            for (const auto& s : bad_note)
                if (!s.empty()) note = s;
            rep.add_fail("P3(quads)", note, "no counterexample");
        }
    }

    return rep;
}

}  // namespace stepup
