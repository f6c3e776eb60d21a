#include "stepup/template_family.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "stepup/rng.hpp"

namespace stepup {

int TemplateFamily::block_multiplicity(int v) const {
    int count = 0;
    for (const auto& b : blocks)
        if (std::binary_search(b.begin(), b.end(), v)) ++count;
    return count;
}

int TemplateFamily::max_multiplicity() const {
    std::vector<int> mult(static_cast<std::size_t>(n), 0);
    for (const auto& b : blocks)
        for (int v : b) ++mult[static_cast<std::size_t>(v)];
    int mx = 0;
    for (int c : mult) mx = std::max(mx, c);
    return mx;
}

std::int64_t TemplateFamily::max_pairwise_intersection() const {
    std::int64_t mx = 0;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        for (std::size_t j = i + 1; j < blocks.size(); ++j) {
            std::vector<int> inter;
            std::set_intersection(blocks[i].begin(), blocks[i].end(), blocks[j].begin(),
                                  blocks[j].end(), std::back_inserter(inter));
            mx = std::max<std::int64_t>(mx, static_cast<std::int64_t>(inter.size()));
        }
    }
    return mx;
}

TemplateFamily gen_template(int n, int s, const Rational& eps, const ParamSet& params,
                            std::uint64_t seed) {
    if (s < 2) throw std::invalid_argument("gen_template: degenerate s (need s >= 2)");
    if (n < 2 * s) throw std::invalid_argument("gen_template: need n >= 2s");
    std::int64_t C = params.template_degree_cap;
    std::int64_t K = params.template_block_count > 0 ? params.template_block_count
                                                     : std::max<std::int64_t>(4, n / (2 * s));
    // s0 = (1 + eps/4) s, at least one slack element
    std::int64_t slack = std::max<std::int64_t>(1, floor_to_int(eps * Rational(s, 4)));
    std::int64_t s0 = s + slack;
    if (s0 > n) throw std::invalid_argument("gen_template: s0 exceeds n");
    std::int64_t eps_s = floor_to_int(eps * Rational(s, 1));  // intersections must stay < eps*s

    TemplateFamily fam;
    fam.n = n;
    fam.s = s;
    fam.degree_cap = C;
    fam.eps = eps;

    const int max_attempts = 5;
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        Rng rng = make_rng(seed + static_cast<std::uint64_t>(attempt));
        // multisets of s0 draws with replacement
        std::vector<std::vector<int>> draws(static_cast<std::size_t>(K));
        for (auto& x : draws) {
            x.resize(static_cast<std::size_t>(s0));
            for (auto& v : x) v = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n)));
            std::sort(x.begin(), x.end());
        }
        // W: vertices lying in more than C of the draws (set membership)
        std::vector<int> mult(static_cast<std::size_t>(n), 0);
        for (const auto& x : draws) {
            int prev = -1;
            for (int v : x) {
                if (v != prev) ++mult[static_cast<std::size_t>(v)];
                prev = v;
            }
        }
        std::vector<char> inW(static_cast<std::size_t>(n), 0);
        std::int64_t w_size = 0;
        for (int v = 0; v < n; ++v) {
            if (mult[static_cast<std::size_t>(v)] > C) {
                inW[static_cast<std::size_t>(v)] = 1;
                ++w_size;
            }
        }
        // classify: distinct elements, mutual pairwise intersections < eps*s,
        // small overlap with W
        std::vector<char> good(static_cast<std::size_t>(K), 1);
        std::vector<std::vector<int>> value_sets(static_cast<std::size_t>(K));
        for (std::int64_t i = 0; i < K; ++i) {
            auto& x = draws[static_cast<std::size_t>(i)];
            bool distinct = std::adjacent_find(x.begin(), x.end()) == x.end();
            if (!distinct) good[static_cast<std::size_t>(i)] = 0;
            value_sets[static_cast<std::size_t>(i)] = x;
            value_sets[static_cast<std::size_t>(i)].erase(
                std::unique(value_sets[static_cast<std::size_t>(i)].begin(),
                            value_sets[static_cast<std::size_t>(i)].end()),
                value_sets[static_cast<std::size_t>(i)].end());
        }
        for (std::int64_t i = 0; i < K; ++i) {
            for (std::int64_t j = i + 1; j < K; ++j) {
                std::vector<int> inter;
                std::set_intersection(value_sets[static_cast<std::size_t>(i)].begin(),
                                      value_sets[static_cast<std::size_t>(i)].end(),
                                      value_sets[static_cast<std::size_t>(j)].begin(),
                                      value_sets[static_cast<std::size_t>(j)].end(),
                                      std::back_inserter(inter));
                if (static_cast<std::int64_t>(inter.size()) >= eps_s) {
                    good[static_cast<std::size_t>(i)] = 0;
                    good[static_cast<std::size_t>(j)] = 0;
                }
            }
        }
        for (std::int64_t i = 0; i < K; ++i) {
            if (!good[static_cast<std::size_t>(i)]) continue;
            std::int64_t in_w = 0;
            for (int v : value_sets[static_cast<std::size_t>(i)])
                if (inW[static_cast<std::size_t>(v)]) ++in_w;
            if (in_w > s0 - s) good[static_cast<std::size_t>(i)] = 0;
        }

        std::vector<std::vector<int>> accepted;
        for (std::int64_t i = 0; i < K; ++i) {
            if (!good[static_cast<std::size_t>(i)]) continue;
            // trim to the lexicographically first s-subset avoiding W
            std::vector<int> y;
            for (int v : draws[static_cast<std::size_t>(i)]) {
                if (!inW[static_cast<std::size_t>(v)]) y.push_back(v);
                if (static_cast<int>(y.size()) == s) break;
            }
            if (static_cast<int>(y.size()) == s) accepted.push_back(std::move(y));
        }

        fam.attempts_used = attempt + 1;
        fam.drawn = K;
        fam.bad_count = K - static_cast<std::int64_t>(accepted.size());
        fam.w_size = w_size;
        if (2 * static_cast<std::int64_t>(accepted.size()) >= K) {
            fam.blocks = std::move(accepted);
            fam.placements.assign(fam.blocks.size(), {});
            return fam;
        }
    }
    std::ostringstream msg;
    msg << "gen_template: fewer than K/2 good sets after " << max_attempts
        << " attempts (K=" << fam.drawn << ", last bad=" << fam.bad_count
        << ", |W|=" << fam.w_size << ")";
    throw std::runtime_error(msg.str());
}

void place_copies(TemplateFamily& t, const Graph& f, std::uint64_t seed) {
    if (f.vertex_count() != t.s)
        throw std::invalid_argument("place_copies: |V(F)| must equal block size");
    Rng rng = make_rng(seed);
    t.placements.clear();
    for (const auto& block : t.blocks) {
        std::vector<int> perm = block;
        shuffle_vec(perm, rng);
        t.placements.push_back(std::move(perm));
    }
}

void TemplateFamily::save(std::ostream& os) const {
    os << "template n=" << n << " s=" << s << " e=" << blocks.size() << " cap=" << degree_cap
       << " eps=" << to_string(eps) << "\n";
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.size(); ++i) os << (i ? " " : "") << b[i];
        os << "\n";
    }
    for (std::size_t i = 0; i < placements.size(); ++i) {
        os << "copy i=" << i << " v=" << placements[i].size() << "\n";
        for (std::size_t j = 0; j < placements[i].size(); ++j)
            os << (j ? " " : "") << placements[i][j];
        if (!placements[i].empty()) os << "\n";
    }
}

TemplateFamily TemplateFamily::load(std::istream& is) {
    std::string header;
    if (!std::getline(is, header) || header.rfind("template ", 0) != 0)
        throw std::invalid_argument("template file: bad header");
    TemplateFamily t;
    std::size_t e = 0;
    std::istringstream hs(header.substr(9));
    std::string tok;
    while (hs >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) continue;
        auto key = tok.substr(0, eq);
        auto val = tok.substr(eq + 1);
        if (key == "n") t.n = std::stoi(val);
        else if (key == "s") t.s = std::stoi(val);
        else if (key == "e") e = static_cast<std::size_t>(std::stoull(val));
        else if (key == "cap") t.degree_cap = std::stoll(val);
        else if (key == "eps") t.eps = parse_rational(val);
    }
    std::string line;
    for (std::size_t i = 0; i < e; ++i) {
        if (!std::getline(is, line)) throw std::invalid_argument("template file: missing block");
        std::istringstream ls(line);
        std::vector<int> block(static_cast<std::size_t>(t.s));
        for (int j = 0; j < t.s; ++j)
            if (!(ls >> block[static_cast<std::size_t>(j)]))
                throw std::invalid_argument("template file: malformed block " + std::to_string(i));
        t.blocks.push_back(std::move(block));
    }
    t.placements.assign(e, {});
    while (std::getline(is, line)) {
        if (line.rfind("copy ", 0) != 0) continue;
        std::size_t idx = 0, v = 0;
        std::istringstream hs2(line.substr(5));
        while (hs2 >> tok) {
            auto eq = tok.find('=');
            if (eq == std::string::npos) continue;
            if (tok.substr(0, eq) == "i") idx = std::stoull(tok.substr(eq + 1));
            if (tok.substr(0, eq) == "v") v = std::stoull(tok.substr(eq + 1));
        }
        if (idx >= e) throw std::invalid_argument("template file: copy index out of range");
        if (v == 0) continue;
        if (!std::getline(is, line)) throw std::invalid_argument("template file: missing copy row");
        std::istringstream ls(line);
        std::vector<int> perm(v);
        for (std::size_t j = 0; j < v; ++j)
            if (!(ls >> perm[j])) throw std::invalid_argument("template file: malformed copy row");
        t.placements[idx] = std::move(perm);
    }
    return t;
}

namespace {

std::int64_t correlated_count(const TemplateFamily& t, const std::vector<char>& inA,
                              std::int64_t a_size) {
    // block correlated with A when ||B ∩ A| - |A|/n * s| > eps*s
    Rational expected = Rational(a_size, t.n) * Rational(t.s, 1);
    Rational margin = t.eps * Rational(t.s, 1);
    std::int64_t out = 0;
    for (const auto& b : t.blocks) {
        std::int64_t hits = 0;
        for (int v : b)
            if (inA[static_cast<std::size_t>(v)]) ++hits;
        Rational dev = Rational(hits, 1) - expected;
        if (dev < Rational(0)) dev = -dev;
        if (dev > margin) ++out;
    }
    return out;
}

}  // namespace

PropertyReport verify_template(const TemplateFamily& t, const Rational& eps,
                               const TemplateAuditBudget& budget) {
    PropertyReport rep;
    rep.suite = "template-audit";
    rep.add_context("n", std::to_string(t.n));
    rep.add_context("s", std::to_string(t.s));
    rep.add_context("blocks", std::to_string(t.blocks.size()));
    rep.add_context("seed", std::to_string(budget.seed));

    bool sizes_ok = true;
    for (const auto& b : t.blocks)
        if (static_cast<int>(b.size()) != t.s) sizes_ok = false;
    if (sizes_ok)
        rep.add_pass("block-sizes", "all " + std::to_string(t.s), "= s");
    else
        rep.add_fail("block-sizes", "mismatch", "= s");

    std::int64_t eps_s = floor_to_int(eps * Rational(t.s, 1));
    std::int64_t mx_inter = t.max_pairwise_intersection();
    if (Rational(mx_inter, 1) < eps * Rational(t.s, 1))
        rep.add_pass("pairwise-intersection", std::to_string(mx_inter),
                     "< eps*s = " + std::to_string(eps_s));
    else
        rep.add_fail("pairwise-intersection", std::to_string(mx_inter),
                     "< eps*s = " + std::to_string(eps_s));

    int mx_mult = t.max_multiplicity();
    if (mx_mult <= t.degree_cap)
        rep.add_pass("degree-cap", std::to_string(mx_mult), "<= C = " + std::to_string(t.degree_cap));
    else
        rep.add_fail("degree-cap", std::to_string(mx_mult), "<= C = " + std::to_string(t.degree_cap));

    // correlation audits
    std::int64_t et = static_cast<std::int64_t>(t.blocks.size());
    if (et == 0) return rep;
    Rational allowed = eps * Rational(et, 1);
    std::int64_t min_a = ceil_to_int(eps * Rational(t.n, 1));

    std::int64_t worst = 0;
    std::string worst_tag;
    auto audit = [&](const std::vector<char>& inA, std::int64_t size, const std::string& tag) {
        std::int64_t c = correlated_count(t, inA, size);
        if (c > worst) {
            worst = c;
            worst_tag = tag + " |A|=" + std::to_string(size);
        }
        return c;
    };

    Rng rng = make_rng(budget.seed);
    for (int trial = 0; trial < budget.random_sets; ++trial) {
        std::int64_t size =
            min_a + static_cast<std::int64_t>(uniform_below(
                        rng, static_cast<std::uint64_t>(t.n - min_a + 1)));
        auto subset = random_subset(rng, t.n, static_cast<int>(size));
        std::vector<char> inA(static_cast<std::size_t>(t.n), 0);
        for (int v : subset) inA[static_cast<std::size_t>(v)] = 1;
        audit(inA, size, "random");
    }
    // adversarial: union of (greedily) disjoint blocks reaching eps*n
    {
        std::vector<char> inA(static_cast<std::size_t>(t.n), 0);
        std::int64_t size = 0;
        for (const auto& b : t.blocks) {
            bool disjoint = true;
            for (int v : b)
                if (inA[static_cast<std::size_t>(v)]) disjoint = false;
            if (!disjoint) continue;
            for (int v : b) inA[static_cast<std::size_t>(v)] = 1;
            size += t.s;
            if (size >= min_a) break;
        }
        // top up with fresh vertices if the blocks ran out
        for (int v = 0; v < t.n && size < min_a; ++v) {
            if (!inA[static_cast<std::size_t>(v)]) {
                inA[static_cast<std::size_t>(v)] = 1;
                ++size;
            }
        }
        audit(inA, size, "block-union");
    }
    // adversarial: prefixes of [n]
    for (std::int64_t size : {min_a, static_cast<std::int64_t>(t.n) / 4,
                              static_cast<std::int64_t>(t.n) / 2,
                              3 * static_cast<std::int64_t>(t.n) / 4,
                              static_cast<std::int64_t>(t.n)}) {
        if (size < min_a) continue;
        std::vector<char> inA(static_cast<std::size_t>(t.n), 0);
        for (std::int64_t v = 0; v < size; ++v) inA[static_cast<std::size_t>(v)] = 1;
        audit(inA, size, "prefix");
    }

    std::ostringstream obs;
    obs << worst << "/" << et << " correlated (" << worst_tag << ")";
    if (Rational(worst, 1) <= allowed)
        rep.add_pass("correlated-blocks", obs.str(), "<= eps*e(T) = " + to_string(allowed));
    else
        rep.add_fail("correlated-blocks", obs.str(), "<= eps*e(T) = " + to_string(allowed));
    return rep;
}

}  // namespace stepup
