#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "stepup/report.hpp"

namespace stepup {

// Nonnegative arbitrary-precision integer. Values of the stepped coloring's
// universe live here; at uniformity u they are bounded by M_u(m) which can
// exceed any fixed width even at desk scale (e.g. 2^127).
using BigNat = boost::multiprecision::cpp_int;

struct SizeBudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Hard cap on the bit length of any single constructed integer. tower() and
// color_universe() refuse to materialize values past it instead of thrashing.
struct SizeBudget {
    std::int64_t max_bits = std::int64_t{1} << 22;
};

/// bit(x, i): the (i-1)-indexed binary digit of x, i >= 1.
int bit_at(const BigNat& x, std::int64_t i);

/// Highest 1-indexed position where x and y differ; 0 iff x == y.
BigNat delta(const BigNat& x, const BigNat& y);

// fast path used by the exhaustive scanners and table builders
inline int delta_small(std::uint64_t x, std::uint64_t y) {
    std::uint64_t d = x ^ y;
    int len = 0;
    while (d) {
        ++len;
        d >>= 1;
    }
    return len;
}

/// Consecutive-pair deltas of a multiset; sorts its input defensively (stable).
std::vector<BigNat> delta_vector(std::vector<BigNat> xs);

/// Iterated exponential: tower(1, x) = x, tower(k, x) = 2^tower(k-1, x).
BigNat tower(int k, const BigNat& x, const SizeBudget& budget = SizeBudget{});

struct ParamSet;

/// Universe size M_k(m): M_2 = 2^max(1, floor(coeff*m)), M_k = 2^(M_{k-1}-1).
BigNat color_universe(int k, const ParamSet& params, const SizeBudget& budget = SizeBudget{});

// Exhaustive verification of the delta function's structural properties over
// small ranges:
//   P1  x < y  <=>  bit(x, d) < bit(y, d) at d = delta(x,y), distinct pairs
//   P2  delta(x,y) != delta(y,z) for x <= y <= z, x < z
//   P3  delta(x1,x4) = max of consecutive deltas on sorted 4-tuples
//   log delta(a,b) <= ceil(log2(max(a,b)+1))
// plus symmetry. quad_range 0 means min(range_max, 1024). The loops are the
// oracle; a counterexample is reported, never thrown.
PropertyReport check_delta_properties(std::int64_t range_max, std::int64_t quad_range = 0,
                                      int threads = 0);

}  // namespace stepup
