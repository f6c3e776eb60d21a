#include "stepup/coloring.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace stepup {

const char* name(TwoColor c) { return c == TwoColor::red ? "red" : "blue"; }

const char* name(FourColor c) {
    switch (c) {
        case FourColor::C1: return "C1";
        case FourColor::C2: return "C2";
        case FourColor::C3: return "C3";
        case FourColor::C4: return "C4";
    }
    return "?";
}

BaseColoring BaseColoring::generate(std::int64_t s, std::uint64_t seed) {
    if (s < 2) throw std::invalid_argument("BaseColoring: s >= 2 required");
    BaseColoring c;
    c.s_ = s;
    c.seed_ = seed;
    std::int64_t pairs = s * (s - 1) / 2;
    c.bits_.assign(static_cast<std::size_t>((pairs + 7) / 8), 0);
    Rng rng = make_rng(seed);
    // one draw per pair, in lexicographic pair order
    for (std::int64_t t = 0; t < pairs; ++t) {
        if (coin(rng)) c.bits_[static_cast<std::size_t>(t / 8)] |= std::uint8_t(1u << (7 - t % 8));
    }
    return c;
}

std::int64_t BaseColoring::pair_index(std::int64_t x, std::int64_t y) const {
    // lexicographic order over pairs {x < y}: (0,1), (0,2), ..., (1,2), ...
    return (2 * s_ - x - 1) * x / 2 + (y - x - 1);
}

TwoColor BaseColoring::color(std::int64_t x, std::int64_t y) const {
    if (x < 0 || y < 0 || x >= s_ || y >= s_)
        throw std::out_of_range("BaseColoring::color: value outside [0, s)");
    if (x == y) return TwoColor::red;
    if (x > y) std::swap(x, y);
    std::int64_t t = pair_index(x, y);
    bool bit = (bits_[static_cast<std::size_t>(t / 8)] >> (7 - t % 8)) & 1u;
    return bit ? TwoColor::blue : TwoColor::red;
}

TwoColor BaseColoring::color(const BigNat& x, const BigNat& y) const {
    if (x >= s_ || y >= s_) throw std::out_of_range("BaseColoring::color: value outside [0, s)");
    return color(x.convert_to<std::int64_t>(), y.convert_to<std::int64_t>());
}

std::int64_t BaseColoring::red_count() const {
    std::int64_t blue = 0;
    std::int64_t pairs = pair_count();
    for (std::int64_t t = 0; t < pairs; ++t)
        blue += (bits_[static_cast<std::size_t>(t / 8)] >> (7 - t % 8)) & 1u;
    return pairs - blue;
}

void BaseColoring::save(std::ostream& os, bool with_bitmap) const {
    os << "basecoloring s=" << s_ << " seed=" << seed_ << " coeff=" << to_string(coeff_) << "\n";
    if (with_bitmap) {
        static const char* hex = "0123456789abcdef";
        std::string line;
        for (std::uint8_t b : bits_) {
            line += hex[b >> 4];
            line += hex[b & 0xf];
        }
        os << line << "\n";
    }
}

BaseColoring BaseColoring::load(std::istream& is) {
    std::string header;
    if (!std::getline(is, header) || header.rfind("basecoloring ", 0) != 0)
        throw std::invalid_argument("basecoloring: bad header");
    std::int64_t s = -1;
    std::uint64_t seed = 0;
    Rational coeff{1, 1};
    std::istringstream hs(header.substr(13));
    std::string tok;
    while (hs >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) continue;
        std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
        if (key == "s") s = std::stoll(val);
        else if (key == "seed") seed = std::stoull(val);
        else if (key == "coeff") coeff = parse_rational(val);
    }
    if (s < 2) throw std::invalid_argument("basecoloring: missing or bad s");
    BaseColoring c = generate(s, seed);
    c.coeff_ = coeff;
    std::string bitmap;
    if (std::getline(is, bitmap) && !bitmap.empty()) {
        // explicit bitmap present: must agree with regeneration
        std::string regen;
        static const char* hex = "0123456789abcdef";
        for (std::uint8_t b : c.bits_) {
            regen += hex[b >> 4];
            regen += hex[b & 0xf];
        }
        if (bitmap != regen)
            throw std::invalid_argument("basecoloring: bitmap does not match (s, seed) regeneration");
    }
    return c;
}

namespace {

// W for one color over the support of w
double weight_mass(const BaseColoring& c, const std::vector<double>& w, TwoColor q) {
    double W = 0;
    std::int64_t s = c.size();
    for (std::int64_t i = 0; i < s; ++i) {
        if (w[static_cast<std::size_t>(i)] == 0) continue;
        for (std::int64_t j = i + 1; j < s; ++j) {
            if (w[static_cast<std::size_t>(j)] == 0) continue;
            if (c.color(i, j) == q) W += w[static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(j)];
        }
    }
    return W;
}

double choose2(double x) { return x * (x - 1) / 2; }

struct Worst {
    double ratio = 0;  // W / (threshold * C(x,2))
    std::string witness;
};

void consider(Worst& worst, const BaseColoring& c, const std::vector<double>& w, double thr,
              const std::string& tag) {
    double x = 0;
    for (double wi : w) x += wi;
    if (x < 2) return;
    double denom = thr * choose2(x);
    for (TwoColor q : {TwoColor::red, TwoColor::blue}) {
        double W = weight_mass(c, w, q);
        double ratio = W / denom;
        if (ratio > worst.ratio) {
            std::ostringstream os;
            os << tag << " color=" << name(q) << " W=" << W << " x=" << x
               << " bound=" << denom;
            worst.ratio = ratio;
            worst.witness = os.str();
        }
    }
}

}  // namespace

PropertyReport verify_base_coloring(const BaseColoring& c, int m, const WeightSearchBudget& budget) {
    PropertyReport rep;
    rep.suite = "base-coloring-weights";
    std::int64_t s = c.size();
    if (s < m || m < 2) throw std::invalid_argument("verify_base_coloring: need s >= m >= 2");
    const double thr = 0.51;
    rep.add_context("s", std::to_string(s));
    rep.add_context("m", std::to_string(m));
    rep.add_context("threshold", "51/100");
    rep.add_context("seed", std::to_string(budget.seed));

    Worst worst;

    if (budget.exhaustive01 && s <= 20) {
        // all 0/1 weight vectors of support exactly m
        std::vector<int> idx(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i) idx[static_cast<std::size_t>(i)] = i;
        std::vector<double> w(static_cast<std::size_t>(s), 0.0);
        std::uint64_t count = 0;
        while (true) {
            std::fill(w.begin(), w.end(), 0.0);
            for (int i : idx) w[static_cast<std::size_t>(i)] = 1.0;
            consider(worst, c, w, thr, "exhaustive01");
            ++count;
            int pos = m - 1;
            while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == s - m + pos) --pos;
            if (pos < 0) break;
            ++idx[static_cast<std::size_t>(pos)];
            for (int i = pos + 1; i < m; ++i)
                idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
        }
        rep.add_context("exhaustive01_vectors", std::to_string(count));
    }

    Rng rng = make_rng(budget.seed);
    std::vector<double> w(static_cast<std::size_t>(s));
    for (int trial = 0; trial < budget.random_trials; ++trial) {
        double x = 0;
        for (auto& wi : w) {
            wi = uniform01(rng);
            x += wi;
        }
        if (x < m) {
            // scale up toward the sum constraint, clipping at 1
            double scale = m / x;
            x = 0;
            for (auto& wi : w) {
                wi = std::min(1.0, wi * scale);
                x += wi;
            }
            if (x < m) continue;  // too much clipping, skip trial
        }
        consider(worst, c, w, thr, "random");
    }

    // coordinate-ascent adversary: keep sum = m via pairwise transfers, each
    // step optimizing one pair exactly (the restriction of W to the pair is
    // quadratic in the transfer amount)
    for (int start = 0; start < budget.ascent_starts; ++start) {
        for (TwoColor q : {TwoColor::red, TwoColor::blue}) {
            std::fill(w.begin(), w.end(), 0.0);
            // random feasible start: support 2m at 1/2 (or all at m/s)
            if (2 * m <= s) {
                auto support = random_subset(rng, static_cast<int>(s), 2 * m);
                for (int i : support) w[static_cast<std::size_t>(i)] = 0.5;
            } else {
                for (auto& wi : w) wi = static_cast<double>(m) / static_cast<double>(s);
            }
            std::vector<double> gain(static_cast<std::size_t>(s));
            for (int it = 0; it < budget.ascent_iters; ++it) {
                std::int64_t i = static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(s)));
                std::int64_t j = static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(s)));
                if (i == j) continue;
                // W restricted to (wi, wj) with wi + wj = sigma fixed:
                //   W(t) = const + ai*t + aj*(sigma - t) + [ij in E_q] t(sigma - t)
                double ai = 0, aj = 0;
                for (std::int64_t l = 0; l < s; ++l) {
                    if (l == i || l == j || w[static_cast<std::size_t>(l)] == 0) continue;
                    if (c.color(std::min(i, l), std::max(i, l)) == q)
                        ai += w[static_cast<std::size_t>(l)];
                    if (c.color(std::min(j, l), std::max(j, l)) == q)
                        aj += w[static_cast<std::size_t>(l)];
                }
                double sigma = w[static_cast<std::size_t>(i)] + w[static_cast<std::size_t>(j)];
                bool edge = c.color(std::min(i, j), std::max(i, j)) == q;
                double lo = std::max(0.0, sigma - 1.0), hi = std::min(1.0, sigma);
                auto value = [&](double t) {
                    return ai * t + aj * (sigma - t) + (edge ? t * (sigma - t) : 0.0);
                };
                double best_t = lo, best_v = value(lo);
                if (value(hi) > best_v) {
                    best_t = hi;
                    best_v = value(hi);
                }
                if (edge) {
                    double vertex = (sigma + ai - aj) / 2.0;  // stationary point
                    if (vertex > lo && vertex < hi && value(vertex) > best_v) best_t = vertex;
                }
                w[static_cast<std::size_t>(i)] = best_t;
                w[static_cast<std::size_t>(j)] = sigma - best_t;
            }
            consider(worst, c, w, thr, "ascent");
        }
    }

    std::ostringstream obs;
    obs << "worst W ratio " << worst.ratio;
    if (worst.ratio >= 1.0)
        rep.add_fail("weight-inequality", obs.str() + " [" + worst.witness + "]",
                     "W < 0.51*C(x,2) for all tested w");
    else
        rep.add_pass("weight-inequality", obs.str(), "W < 0.51*C(x,2) for all tested w");
    if (!worst.witness.empty()) rep.add_context("worst_witness", worst.witness);
    return rep;
}

SteppedColoring::SteppedColoring(int k, const ParamSet& params, std::uint64_t base_seed,
                                 bool memoize)
    : SteppedColoring(k, params,
                      [&] {
                          BigNat m2 = color_universe(2, params);
                          BaseColoring b =
                              BaseColoring::generate(m2.convert_to<std::int64_t>(), base_seed);
                          b.set_coeff(params.base_exponent_coeff);
                          return b;
                      }(),
                      memoize) {}

SteppedColoring::SteppedColoring(int k, const ParamSet& params, BaseColoring base, bool memoize)
    : k_(k), params_(params), base_(std::move(base)), memoize_(memoize) {
    if (k_ < 2) throw std::invalid_argument("SteppedColoring: k >= 2");
    universes_.resize(static_cast<std::size_t>(k_) + 1);
    for (int u = 2; u <= k_; ++u) universes_[static_cast<std::size_t>(u)] = color_universe(u, params_);
    if (BigNat(base_.size()) != universes_[2])
        throw std::invalid_argument("SteppedColoring: base coloring size must equal M_2(m)");
}

const BigNat& SteppedColoring::universe(int u) const {
    if (u < 2 || u > k_) throw std::out_of_range("SteppedColoring::universe: u outside [2, k]");
    return universes_[static_cast<std::size_t>(u)];
}

TwoColor SteppedColoring::pair(const BigNat& x, const BigNat& y) const { return base_.color(x, y); }

FourColor SteppedColoring::color(std::vector<BigNat> xs) const {
    int j = static_cast<int>(xs.size());
    if (j < 3 || j > k_)
        throw std::invalid_argument("SteppedColoring::color: multiset size outside [3, k]");
    const BigNat& M = universe(j);
    for (const auto& x : xs) {
        if (x < 0 || x >= M)
            throw std::out_of_range("SteppedColoring::color: value outside [0, M_" +
                                    std::to_string(j) + ")");
    }
    std::sort(xs.begin(), xs.end());
    if (memoize_) {
        std::lock_guard<std::mutex> lock(memo_mutex_);
        auto it = memo_.find(xs);
        if (it != memo_.end()) return it->second;
    }
    std::vector<BigNat> key;
    if (memoize_) key = xs;
    FourColor out = color_sorted(xs);
    if (memoize_) {
        std::lock_guard<std::mutex> lock(memo_mutex_);
        memo_.emplace(std::move(key), out);
    }
    return out;
}

FourColor SteppedColoring::color_sorted(std::vector<BigNat>& xs) const {
    int j = static_cast<int>(xs.size());
    if (j == 3) {
        // the all-equal case wins over the delta comparison branches
        if (xs[0] == xs[2]) return FourColor::C1;
        BigNat d1 = delta(xs[0], xs[1]);
        BigNat d2 = delta(xs[1], xs[2]);
        if (d1 == d2)
            throw std::logic_error("phi3: delta_1 == delta_2 on a non-constant triple (P2 defect)");
        TwoColor base = base_.color(d1, d2);
        if (d1 < d2) return base == TwoColor::red ? FourColor::C1 : FourColor::C2;
        return base == TwoColor::red ? FourColor::C3 : FourColor::C4;
    }
    // j >= 4
    std::vector<BigNat> ds;
    ds.reserve(static_cast<std::size_t>(j) - 1);
    for (int i = 0; i + 1 < j; ++i) ds.push_back(delta(xs[static_cast<std::size_t>(i)], xs[static_cast<std::size_t>(i + 1)]));
    bool nondec = true, noninc = true;
    for (std::size_t i = 0; i + 1 < ds.size(); ++i) {
        if (ds[i] > ds[i + 1]) nondec = false;
        if (ds[i] < ds[i + 1]) noninc = false;
    }
    if (nondec || noninc) {
        std::sort(ds.begin(), ds.end());
        return color_sorted(ds);
    }
    // non-monotone: unique argmax position decides (1-based)
    std::size_t arg = 0;
    int max_count = 1;
    for (std::size_t i = 1; i < ds.size(); ++i) {
        if (ds[i] > ds[arg]) {
            arg = i;
            max_count = 1;
        } else if (ds[i] == ds[arg]) {
            ++max_count;
        }
    }
    if (max_count != 1)
        throw std::logic_error("phi_k: non-unique argmax on a non-constant multiset (P2/P3 defect)");
    std::size_t pos = arg + 1;
    if (pos == 1 || pos == ds.size()) return FourColor::C1;
    return FourColor::C2;
}

FourColor SteppedColoring::lifted(const std::vector<std::pair<BigNat, std::int64_t>>& vertices,
                                  std::int64_t b) const {
    if (static_cast<int>(vertices.size()) != k_)
        throw std::invalid_argument("lifted: expected a k-set of pairs");
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (vertices[i].second < 0 || vertices[i].second >= b)
            throw std::out_of_range("lifted: second coordinate outside [0, b)");
        for (std::size_t j = i + 1; j < vertices.size(); ++j)
            if (vertices[i] == vertices[j])
                throw std::invalid_argument("lifted: duplicate pair (Psi colors sets)");
    }
    std::vector<BigNat> xs;
    xs.reserve(vertices.size());
    for (const auto& [x, y] : vertices) xs.push_back(x);
    return color(std::move(xs));
}

}  // namespace stepup
