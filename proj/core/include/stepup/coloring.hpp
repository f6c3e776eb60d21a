#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "stepup/numeric.hpp"
#include "stepup/params.hpp"
#include "stepup/report.hpp"
#include "stepup/rng.hpp"

namespace stepup {

enum class TwoColor : std::uint8_t { red = 0, blue = 1 };
enum class FourColor : std::uint8_t { C1 = 1, C2 = 2, C3 = 3, C4 = 4 };

const char* name(TwoColor c);
const char* name(FourColor c);

// Random two-coloring of the pairs of [0, s), diagonal fixed to red. The
// bitmap is in lexicographic pair order, one bit per pair, red = 0, and is a
// pure function of (s, seed).
class BaseColoring {
public:
    static BaseColoring generate(std::int64_t s, std::uint64_t seed);

    std::int64_t size() const { return s_; }
    std::uint64_t seed() const { return seed_; }
    const Rational& coeff() const { return coeff_; }
    void set_coeff(const Rational& c) { coeff_ = c; }

    /// Pair color; phi^2(x, x) = red on the diagonal.
    TwoColor color(std::int64_t x, std::int64_t y) const;
    TwoColor color(const BigNat& x, const BigNat& y) const;

    std::int64_t red_count() const;
    std::int64_t pair_count() const { return s_ * (s_ - 1) / 2; }

    void save(std::ostream& os, bool with_bitmap = true) const;
    static BaseColoring load(std::istream& is);

    bool operator==(const BaseColoring& other) const = default;

private:
    BaseColoring() = default;
    std::int64_t pair_index(std::int64_t x, std::int64_t y) const;

    std::int64_t s_ = 0;
    std::uint64_t seed_ = 0;
    Rational coeff_{1, 1};
    std::vector<std::uint8_t> bits_;  // packed, bit 7-(t%8) of byte t/8
};

// Search for a weight function violating the base-coloring inequality
//   W = sum_{ij in E_c} w(i) w(j) < threshold * C(x, 2),  x = sum w(i) >= m.
// PASS means no violation under the configured budget; the inequality is
// existential in the coloring, so a PASS is evidence, not a certificate.
struct WeightSearchBudget {
    bool exhaustive01 = true;  // all 0/1 vectors of support exactly m (s <= 20)
    int random_trials = 2000;
    int ascent_starts = 20;
    int ascent_iters = 400;
    std::uint64_t seed = 1;
};

PropertyReport verify_base_coloring(const BaseColoring& c, int m, const WeightSearchBudget& budget);

// The recursive 4-coloring of multisets from [0, M_k(m)). Evaluation accepts
// any multiset size in [3, k]; the monotone branch of size j recurses at
// size j-1 and bottoms out in the 5-case table at j = 3.
class SteppedColoring {
public:
    SteppedColoring(int k, const ParamSet& params, std::uint64_t base_seed,
                    bool memoize = false);
    SteppedColoring(int k, const ParamSet& params, BaseColoring base, bool memoize = false);

    int k() const { return k_; }
    const ParamSet& params() const { return params_; }
    const BaseColoring& base() const { return base_; }
    const BigNat& universe(int u) const;  // M_u(m), u in [2, k]

    TwoColor pair(const BigNat& x, const BigNat& y) const;

    /// phi^(j) of a j-multiset, j = xs.size() in [3, k].
    FourColor color(std::vector<BigNat> xs) const;

    /// Lifted coloring Psi: k distinct pairs (x, y), colored by the first
    /// coordinates' phi color.
    FourColor lifted(const std::vector<std::pair<BigNat, std::int64_t>>& vertices,
                     std::int64_t b) const;

private:
    FourColor color_sorted(std::vector<BigNat>& xs) const;

    int k_;
    ParamSet params_;
    BaseColoring base_;
    std::vector<BigNat> universes_;  // universes_[u] = M_u, u in [2, k]
    bool memoize_;
    mutable std::mutex memo_mutex_;
    mutable std::map<std::vector<BigNat>, FourColor> memo_;
};

}  // namespace stepup
