#include "stepup/reduction.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "stepup/rng.hpp"

namespace stepup {

const BigNat& StepTrace::delta_at(std::int64_t i) const {
    if (i < 1 || i > n() - 1) throw std::out_of_range("delta_at: index outside [1, n-1]");
    return deltas[static_cast<std::size_t>(i - 1)];
}

StepTrace run_interval_procedure(const std::vector<BigNat>& xs, const ParamSet& params,
                                 std::int64_t b_u) {
    if (xs.size() < 2) throw std::invalid_argument("run_interval_procedure: need n_u >= 2");
    for (std::size_t i = 0; i + 1 < xs.size(); ++i)
        if (xs[i] > xs[i + 1]) throw std::invalid_argument("run_interval_procedure: xs not sorted");

    StepTrace tr;
    tr.xs = xs;
    tr.b_u = b_u;
    tr.deltas.reserve(xs.size() - 1);
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) tr.deltas.push_back(delta(xs[i], xs[i + 1]));

    const std::int64_t n = tr.n();
    const Rational stop_threshold(n, params.stop_divisor);
    std::int64_t l = 1, r = n;
    while (Rational(r - l, 1) >= stop_threshold && r - l >= 2) {
        // unique argmax over [l, r-1]
        std::int64_t p = l;
        int max_count = 1;
        for (std::int64_t i = l + 1; i <= r - 1; ++i) {
            const BigNat& d = tr.delta_at(i);
            const BigNat& cur = tr.delta_at(p);
            if (d > cur) {
                p = i;
                max_count = 1;
            } else if (d == cur) {
                ++max_count;
            }
        }
        if (max_count != 1) {
            std::ostringstream msg;
            msg << "run_interval_procedure: non-unique delta argmax on [" << l << ", " << r
                << "] (length " << r - l << ", b_u " << b_u
                << "); the multiplicity cap must be breached";
            throw std::logic_error(msg.str());
        }
        bool right = !(p - l >= r - p);
        tr.steps.push_back(StepRecord{l, r, p, right});
        if (right) {
            l = p + 1;
        } else {
            r = p;
        }
    }
    tr.final_l = l;
    tr.final_r = r;
    return tr;
}

PropertyReport StepTrace::validate(const ParamSet& params) const {
    PropertyReport rep;
    rep.suite = "interval-trace";
    const std::int64_t nn = n();
    rep.add_context("n_u", std::to_string(nn));
    rep.add_context("T", std::to_string(total_steps()));

    bool start_ok = steps.empty() ? (final_l == 1 && final_r == nn)
                                  : (steps.front().l == 1 && steps.front().r == nn);
    rep.add(CheckItem{"start-interval", start_ok, "", "l_1 = 1, r_1 = n_u", ""});

    bool nest_ok = true, half_ok = true, pivot_ok = true;
    for (std::size_t j = 0; j < steps.size(); ++j) {
        std::int64_t nl = j + 1 < steps.size() ? steps[j + 1].l : final_l;
        std::int64_t nr = j + 1 < steps.size() ? steps[j + 1].r : final_r;
        if (!(steps[j].l <= nl && nr <= steps[j].r && (nl > steps[j].l || nr < steps[j].r)))
            nest_ok = false;
        // discrete half-length: new >= (old - 1) / 2
        if (2 * (nr - nl) < steps[j].r - steps[j].l - 1) half_ok = false;
        // pivot maximality within [l, r-1]
        const BigNat& dp = delta_at(steps[j].p);
        for (std::int64_t i = steps[j].l; i <= steps[j].r - 1; ++i) {
            if (i == steps[j].p) continue;
            if (delta_at(i) >= dp) {
                pivot_ok = false;
                break;
            }
        }
    }
    rep.add(CheckItem{"nesting", nest_ok, "", "[l_{j+1}, r_{j+1}] strictly inside", ""});
    rep.add(CheckItem{"half-length", half_ok, "", "len_{j+1} >= (len_j - 1)/2", ""});
    rep.add(CheckItem{"pivot-unique-max", pivot_ok, "", "delta_{p_j} strict max", ""});

    // final length: the discrete form of n_u/(2*stop_divisor); the continuous
    // bound overshoots by up to 1/2 at integer scale
    Rational final_bound = Rational(nn, 2 * params.stop_divisor) - Rational(1, 2);
    bool final_ok = Rational(final_r - final_l, 1) >= final_bound;
    rep.add(CheckItem{"final-length", final_ok, std::to_string(final_r - final_l),
                      ">= n_u/(2*stop) - 1/2 = " + to_string(final_bound), ""});
    return rep;
}

namespace {

struct FiveRounds {
    bool feasible = true;
    std::string error;
    std::vector<std::int64_t> t;     // t_i' per round
    std::vector<bool> right_move;    // classification per round
};

// interval of step j (1-based); j = T is the final interval
std::pair<std::int64_t, std::int64_t> interval_at(const StepTrace& tr, std::int64_t j) {
    if (j <= static_cast<std::int64_t>(tr.steps.size())) {
        const auto& s = tr.steps[static_cast<std::size_t>(j - 1)];
        return {s.l, s.r};
    }
    return {tr.final_l, tr.final_r};
}

FiveRounds run_five_rounds(const StepTrace& tr, const Rational& thr) {
    FiveRounds out;
    const std::int64_t T = tr.total_steps();
    std::int64_t a = 1, b = tr.n();
    for (int round = 0; round < 5; ++round) {
        std::int64_t found = -1;
        bool right = false;
        for (std::int64_t j = 1; j <= T; ++j) {
            auto [lj, rj] = interval_at(tr, j);
            bool l_gap = Rational(lj - a, 1) >= thr;
            bool r_gap = Rational(b - rj, 1) >= thr;
            if (l_gap || r_gap) {
                found = j;
                right = l_gap;  // prefer the right classification when both fire
                break;
            }
        }
        if (found < 0) {
            out.feasible = false;
            out.error = "five-round placement failed at round " + std::to_string(round + 1);
            return out;
        }
        auto [lj, rj] = interval_at(tr, found);
        out.t.push_back(found);
        out.right_move.push_back(right);
        a = lj;
        b = rj;
    }
    return out;
}

}  // namespace

TripleSelection find_triple(const StepTrace& trace, const ParamSet& params, std::int64_t b_next,
                            const BigNat& universe) {
    if (trace.total_steps() <= 1)
        throw std::invalid_argument("find_triple: trace has no pivot steps (T = 1)");
    const Rational thr(trace.n(), params.gap_divisor);

    auto assemble = [&](const StepTrace& tr, const FiveRounds& rounds,
                        bool mirrored) -> TripleSelection {
        std::vector<std::int64_t> picks;
        for (std::size_t i = 0; i < rounds.t.size() && picks.size() < 3; ++i)
            if (rounds.right_move[i]) picks.push_back(rounds.t[i]);
        if (picks.size() < 3)
            throw std::logic_error("find_triple: right case expected after mirroring");
        TripleSelection sel;
        sel.mirrored = mirrored;
        sel.trace = tr;
        sel.t1 = picks[0];
        sel.t2 = picks[1];
        sel.t3 = picks[2];
        auto l_of = [&](std::int64_t j) { return interval_at(tr, j).first; };
        sel.I1 = {1, l_of(sel.t1) - 1};
        sel.I2 = {l_of(sel.t1), l_of(sel.t2) - 1};
        sel.I3 = {l_of(sel.t2), l_of(sel.t3) - 1};
        sel.b_next = b_next;
        for (std::int64_t j = sel.t1; j < sel.t2; ++j) {
            const auto& s = tr.steps[static_cast<std::size_t>(j - 1)];
            if (!s.right) continue;
            sel.R.push_back(j);
            sel.S.push_back(PosInterval{s.l, s.p});
        }
        // the S_j tile I2 consecutively
        std::int64_t cursor = sel.I2.lo;
        for (const auto& s : sel.S) {
            if (s.lo != cursor)
                throw std::logic_error("find_triple: S_j blocks do not tile I2");
            cursor = s.hi + 1;
        }
        if (!sel.S.empty() && cursor != sel.I2.hi + 1)
            throw std::logic_error("find_triple: S_j blocks do not cover I2");
        for (std::size_t i = 0; i < sel.S.size(); ++i) {
            if (sel.S[i].length() <= b_next) sel.small_idx.push_back(i);
            else sel.big_idx.push_back(i);
        }
        return sel;
    };

    FiveRounds rounds = run_five_rounds(trace, thr);
    if (!rounds.feasible) throw std::invalid_argument("find_triple: " + rounds.error);
    int rights = 0, lefts = 0;
    for (bool r : rounds.right_move) r ? ++rights : ++lefts;
    if (rights >= 3) return assemble(trace, rounds, false);
    if (lefts < 3) throw std::logic_error("find_triple: pigeonhole failure");

    // left case: mirror by value complement (universe is a power of two, so
    // M_u - 1 - x reverses order and preserves every delta)
    BigNat c = universe - 1;
    std::vector<BigNat> ys(trace.xs.size());
    for (std::size_t i = 0; i < trace.xs.size(); ++i)
        ys[i] = c - trace.xs[trace.xs.size() - 1 - i];
    StepTrace mirror = run_interval_procedure(ys, params, trace.b_u);
    FiveRounds mrounds = run_five_rounds(mirror, thr);
    if (!mrounds.feasible) throw std::invalid_argument("find_triple(mirror): " + mrounds.error);
    return assemble(mirror, mrounds, true);
}

ReductionState ReductionState::mirrored(const BigNat& universe) const {
    ReductionState out = *this;
    const std::int64_t nn = n_u();
    BigNat c = universe - 1;
    for (std::int64_t i = 0; i < nn; ++i) {
        out.xs[static_cast<std::size_t>(i)] = c - xs[static_cast<std::size_t>(nn - 1 - i)];
        out.orig[static_cast<std::size_t>(i)] = orig[static_cast<std::size_t>(nn - 1 - i)];
    }
    for (auto& block : out.block_positions) {
        for (auto& p : block) p = nn + 1 - p;
        std::sort(block.begin(), block.end());
    }
    return out;
}

namespace {

// position (1-based) of each original vertex, or -1
std::vector<std::int64_t> position_of(const ReductionState& st) {
    std::vector<std::int64_t> pos(static_cast<std::size_t>(st.n_total), -1);
    for (std::int64_t i = 0; i < st.n_u(); ++i)
        pos[static_cast<std::size_t>(st.orig[static_cast<std::size_t>(i)])] = i + 1;
    return pos;
}

// |B_i cap I| counted through the position map over the full template block
std::int64_t block_hits(const std::vector<int>& block, const std::vector<std::int64_t>& pos,
                        const PosInterval& iv) {
    std::int64_t hits = 0;
    for (int v : block)
        if (pos[static_cast<std::size_t>(v)] >= 1 && iv.contains(pos[static_cast<std::size_t>(v)]))
            ++hits;
    return hits;
}

bool correlated_with(const std::vector<int>& block, const std::vector<std::int64_t>& pos,
                     const PosInterval& iv, std::int64_t n_total, int s, const Rational& eps) {
    // >= eps*s deviation from |A|/n * s (the pruning-side definition)
    Rational expected = Rational(iv.length(), n_total) * Rational(s, 1);
    Rational dev = Rational(block_hits(block, pos, iv), 1) - expected;
    if (dev < Rational(0)) dev = -dev;
    return dev >= eps * Rational(s, 1);
}

}  // namespace

PruneOutcome prune_blocks(const ReductionState& state, const TripleSelection& sel,
                          const TemplateFamily& tmpl, const Graph& f) {
    PruneOutcome out;
    out.report.suite = "block-pruning";
    const std::size_t et = tmpl.blocks.size();
    if (state.block_positions.size() != et)
        throw std::invalid_argument("prune_blocks: state/template block count mismatch");
    if (tmpl.placements.size() != et || (et > 0 && tmpl.placements[0].empty()))
        throw std::invalid_argument("prune_blocks: template has no placed copies");

    auto pos = position_of(state);
    const int k = state.params.uniformity;
    const int u = state.u;
    const Rational eps = state.params.epsilon;
    const int s = tmpl.s;

    out.b_prime.resize(et);
    out.correlated.assign(et, 0);

    std::int64_t eq1_worst = -1;
    std::size_t empty_count = 0;

    for (std::size_t i = 0; i < et; ++i) {
        const auto& block = tmpl.blocks[i];
        bool corr = false;
        for (const PosInterval* iv : {&sel.I1, &sel.I2, &sel.I3})
            if (correlated_with(block, pos, *iv, state.n_total, s, eps)) corr = true;
        out.correlated[i] = corr ? 1 : 0;
        if (corr) {
            ++empty_count;
            continue;
        }
        const auto& members = state.block_positions[i];  // B_i^u as positions
        if (members.empty()) {
            ++empty_count;
            continue;
        }
        // host vertex -> F vertex for this copy
        std::map<int, int> f_index;
        for (std::size_t j = 0; j < tmpl.placements[i].size(); ++j)
            f_index[tmpl.placements[i][j]] = static_cast<int>(j);
        auto in_bu = [&](std::int64_t p) {
            return std::binary_search(members.begin(), members.end(), p);
        };
        for (std::int64_t p : members) {
            if (!sel.I2.contains(p)) continue;
            int host = state.orig[static_cast<std::size_t>(p - 1)];
            auto it = f_index.find(host);
            if (it == f_index.end()) continue;
            int nb1 = 0, nb3 = 0;
            for (int fn : f.neighbors(it->second)) {
                int host_nb = tmpl.placements[i][static_cast<std::size_t>(fn)];
                std::int64_t pn = pos[static_cast<std::size_t>(host_nb)];
                if (pn < 1 || !in_bu(pn)) continue;
                if (sel.I1.contains(pn)) ++nb1;
                if (sel.I3.contains(pn)) ++nb3;
            }
            if (nb1 >= k && nb3 >= k) out.b_prime[i].push_back(p);
        }
        if (out.b_prime[i].empty()) {
            ++empty_count;
            continue;
        }
        // eq. (1): |(B_i \ B'_i) cap I2| <= 2(k-u+1) eps s
        std::int64_t bi_in_i2 = block_hits(block, pos, sel.I2);
        std::int64_t diff = bi_in_i2 - static_cast<std::int64_t>(out.b_prime[i].size());
        eq1_worst = std::max(eq1_worst, diff);
    }

    Rational eq1_bound = Rational(2 * (k - u + 1), 1) * eps * Rational(s, 1);
    if (eq1_worst >= 0)
        out.report.add(CheckItem{"eq1-pruned-mass", Rational(eq1_worst, 1) <= eq1_bound,
                                 std::to_string(eq1_worst), "<= 2(k-u+1)*eps*s = " + to_string(eq1_bound),
                                 "paper-inequality observed-vs-bound"});
    Rational eq2_bound = Rational(4 * (k - u) + 3, 1) * eps * Rational(static_cast<std::int64_t>(et), 1);
    out.report.add(CheckItem{"eq2-empty-blocks", Rational(static_cast<std::int64_t>(empty_count), 1) <= eq2_bound,
                             std::to_string(empty_count),
                             "<= (4(k-u)+3)*eps*e(T) = " + to_string(eq2_bound),
                             "paper-inequality observed-vs-bound"});
    return out;
}

SeparationOutcome check_separation(const std::vector<std::vector<std::int64_t>>& b_prime,
                                   const TripleSelection& sel, const ReductionState& state,
                                   const TemplateFamily& tmpl, const Graph& f,
                                   const SteppedColoring& sc) {
    SeparationOutcome out;
    out.report.suite = "separation-claim";
    const int u = state.u;
    const StepTrace& tr = sel.trace;
    auto pos = position_of(state);

    const BigNat& d_t1 = tr.delta_at(sel.I2.lo - 1);  // delta_{l_{t1}-1}
    const BigNat& d_t2 = tr.delta_at(sel.I3.lo - 1);  // delta_{l_{t2}-1}

    std::int64_t pairs_checked = 0;
    for (std::size_t i = 0; i < b_prime.size(); ++i) {
        if (b_prime[i].empty()) continue;
        for (std::size_t si = 0; si < sel.S.size(); ++si) {
            const PosInterval& S = sel.S[si];
            std::vector<std::int64_t> inside;
            for (std::int64_t p : b_prime[i])
                if (S.contains(p)) inside.push_back(p);
            ++pairs_checked;
            if (inside.size() <= 1) continue;

            SeparationViolation viol;
            viol.block = i;
            viol.j = sel.R[si];
            viol.v = inside[0];
            viol.w = inside[1];

            // F_i-neighbors of v inside B_i^u, split by interval
            std::map<int, int> f_index;
            for (std::size_t j = 0; j < tmpl.placements[i].size(); ++j)
                f_index[tmpl.placements[i][j]] = static_cast<int>(j);
            const auto& members = state.block_positions[i];
            auto in_bu = [&](std::int64_t p) {
                return std::binary_search(members.begin(), members.end(), p);
            };
            std::vector<std::int64_t> nb1, nb3;
            int host_v = state.orig[static_cast<std::size_t>(viol.v - 1)];
            for (int fn : f.neighbors(f_index.at(host_v))) {
                int host_nb = tmpl.placements[i][static_cast<std::size_t>(fn)];
                std::int64_t pn = pos[static_cast<std::size_t>(host_nb)];
                if (pn < 1 || !in_bu(pn)) continue;
                if (sel.I1.contains(pn)) nb1.push_back(pn);
                if (sel.I3.contains(pn)) nb3.push_back(pn);
            }
            std::sort(nb1.begin(), nb1.end());
            std::sort(nb3.begin(), nb3.end());
            int need3 = u - 2;
            if (nb1.empty() || static_cast<int>(nb3.size()) < need3) {
                out.report.add_fail(
                    "witness-construction[block " + std::to_string(i) + "]",
                    "missing F_i neighbors in I1/I3", "pruning contract",
                    "vertex survived pruning without the required neighbors");
                out.pass = false;
                continue;
            }
            std::int64_t y = nb1.front();
            std::vector<std::int64_t> zs(nb3.begin(), nb3.begin() + need3);

            viol.e1.push_back(y);
            viol.e1.push_back(viol.v);
            viol.e1.push_back(viol.w);
            for (int a = 0; a + 1 < need3; ++a) viol.e1.push_back(zs[static_cast<std::size_t>(a)]);
            viol.e2.push_back(viol.v);
            viol.e2.push_back(viol.w);
            for (std::int64_t z : zs) viol.e2.push_back(z);

            auto values_of = [&](const std::vector<std::int64_t>& ps) {
                std::vector<BigNat> vals;
                for (std::int64_t p : ps) vals.push_back(tr.xs[static_cast<std::size_t>(p - 1)]);
                return vals;
            };
            viol.color1 = sc.color(values_of(viol.e1));
            viol.color2 = sc.color(values_of(viol.e2));
            if (u == 3) {
                viol.class1_ok = viol.color1 == FourColor::C3 || viol.color1 == FourColor::C4;
                viol.class2_ok = viol.color2 == FourColor::C1 || viol.color2 == FourColor::C2;
            } else {
                viol.class1_ok = viol.color1 == FourColor::C1;
                viol.class2_ok = viol.color2 == FourColor::C2;
            }

            // D1-D4 audit
            const BigNat& d_pj = tr.delta_at(sel.S[si].hi);  // delta_{p_j}
            BigNat d_vw = delta(tr.xs[static_cast<std::size_t>(viol.v - 1)],
                                tr.xs[static_cast<std::size_t>(viol.w - 1)]);
            BigNat d_yv = delta(tr.xs[static_cast<std::size_t>(y - 1)],
                                tr.xs[static_cast<std::size_t>(viol.v - 1)]);
            BigNat d_wz = delta(tr.xs[static_cast<std::size_t>(viol.w - 1)],
                                tr.xs[static_cast<std::size_t>(zs[0] - 1)]);
            bool d1 = d_vw < d_pj && d_pj < d_t1;
            bool d2 = d_yv >= d_t1;
            bool d3 = d_wz == d_pj && d_t2 <= d_pj && d_pj < d_t1;
            bool d4 = true;
            for (std::size_t a = 0; a + 1 < zs.size(); ++a) {
                BigNat d_zz = delta(tr.xs[static_cast<std::size_t>(zs[a] - 1)],
                                    tr.xs[static_cast<std::size_t>(zs[a + 1] - 1)]);
                if (!(d_zz < d_t2)) d4 = false;
            }
            viol.d_audit_ok = d1 && d2 && d3 && d4;

            std::ostringstream obs;
            obs << "block " << i << " S_" << viol.j << " holds positions " << viol.v << ", "
                << viol.w << "; e1 -> " << name(viol.color1) << ", e2 -> " << name(viol.color2);
            out.report.add_fail("separation[block " + std::to_string(i) + "]", obs.str(),
                                "|B'_i cap S_j| <= 1",
                                viol.d_audit_ok ? "D1-D4 hold" : "D1-D4 audit failed");
            out.violations.push_back(std::move(viol));
            out.pass = false;
        }
    }
    if (out.pass)
        out.report.add_pass("separation", "all |B'_i cap S_j| <= 1",
                            std::to_string(pairs_checked) + " (block, S_j) pairs");
    return out;
}

NextEmbedding build_next_embedding(const ReductionState& state, const TripleSelection& sel,
                                   const std::vector<std::int64_t>& u_next) {
    NextEmbedding out;
    out.report.suite = "next-embedding";
    const StepTrace& tr = sel.trace;
    if (u_next.empty()) throw std::invalid_argument("build_next_embedding: empty U^{u-1}");
    if (!std::is_sorted(u_next.begin(), u_next.end()))
        throw std::invalid_argument("build_next_embedding: U^{u-1} must be sorted");

    // locate the host small block of every position
    std::vector<std::size_t> owner(u_next.size());
    for (std::size_t t = 0; t < u_next.size(); ++t) {
        std::int64_t p = u_next[t];
        bool found = false;
        for (std::size_t si : sel.small_idx) {
            if (sel.S[si].contains(p)) {
                owner[t] = si;
                found = true;
                break;
            }
        }
        if (!found)
            throw std::invalid_argument("build_next_embedding: position " + std::to_string(p) +
                                        " not inside any small S_j");
    }

    const BigNat& x_star = sel.x_star();
    out.positions = u_next;
    out.values.reserve(u_next.size());
    for (std::int64_t p : u_next)
        out.values.push_back(delta(tr.xs[static_cast<std::size_t>(p - 1)], x_star));

    // range: log bound keeps values below M_{u-1}
    BigNat m_next = color_universe(state.u - 1, state.params);
    bool range_ok = true;
    for (const auto& v : out.values)
        if (v >= m_next) range_ok = false;
    out.report.add(CheckItem{"range", range_ok, "", "h^{u-1} < M_{u-1}", ""});

    // eq. (3): value in [delta_{p_j}, delta_{l_j - 1} - 1]
    bool eq3_ok = true;
    std::string eq3_witness;
    for (std::size_t t = 0; t < u_next.size(); ++t) {
        const PosInterval& S = sel.S[owner[t]];
        const BigNat& d_pj = tr.delta_at(S.hi);
        const BigNat& d_prev = tr.delta_at(S.lo - 1);
        if (!(d_pj <= out.values[t] && out.values[t] <= d_prev - 1)) {
            eq3_ok = false;
            if (eq3_witness.empty())
                eq3_witness = "position " + std::to_string(u_next[t]);
        }
    }
    out.report.add(CheckItem{"eq3-containment", eq3_ok, eq3_witness,
                             "h in [delta_{p_j}, delta_{l_j-1} - 1]", ""});

    // cross-block order reversal
    bool order_ok = true;
    std::string order_witness;
    for (std::size_t t = 0; t + 1 < u_next.size(); ++t) {
        if (owner[t] != owner[t + 1]) {
            if (!(out.values[t] > out.values[t + 1])) {
                order_ok = false;
                if (order_witness.empty())
                    order_witness = "positions " + std::to_string(u_next[t]) + ", " +
                                    std::to_string(u_next[t + 1]);
            }
        }
    }
    out.report.add(CheckItem{"order-reversal", order_ok, order_witness,
                             "h strictly decreasing across blocks", ""});

    // multiplicity cap b_{u-1}
    std::map<BigNat, std::int64_t> mult;
    std::int64_t worst = 0;
    for (const auto& v : out.values) worst = std::max(worst, ++mult[v]);
    bool cap_ok = worst <= sel.b_next;
    out.report.add(CheckItem{"cap", cap_ok, std::to_string(worst),
                             "<= b_{u-1} = " + std::to_string(sel.b_next), ""});

    if (!out.report.pass)
        throw std::logic_error("build_next_embedding: verification failed (" +
                               out.report.first_counterexample.value_or("unknown") + ")");
    return out;
}

PropertyReport check_color_determination(const SteppedColoring& sc, int u,
                                         const std::vector<BigNat>& chain) {
    PropertyReport rep;
    rep.suite = "color-determination";
    if (static_cast<int>(chain.size()) != u)
        throw std::invalid_argument("check_color_determination: chain size must equal u");
    if (u < 3) throw std::invalid_argument("check_color_determination: u >= 3");
    for (std::size_t i = 0; i + 1 < chain.size(); ++i)
        if (!(chain[i] < chain[i + 1]))
            throw std::invalid_argument("check_color_determination: chain must be increasing");
    std::vector<BigNat> ds;
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) ds.push_back(delta(chain[i], chain[i + 1]));
    for (std::size_t i = 0; i + 1 < ds.size(); ++i)
        if (!(ds[i] > ds[i + 1]))
            throw std::invalid_argument(
                "check_color_determination: consecutive deltas must strictly decrease");

    FourColor lhs = sc.color(chain);
    bool match;
    std::string expect;
    if (u == 3) {
        TwoColor base = sc.pair(ds[0], ds[1]);
        FourColor rhs = base == TwoColor::red ? FourColor::C3 : FourColor::C4;
        match = lhs == rhs;
        expect = std::string(name(rhs)) + " via phi2 = " + name(base);
    } else {
        FourColor rhs = sc.color(ds);
        match = lhs == rhs;
        expect = std::string(name(rhs)) + " via phi^(u-1) on deltas";
    }
    rep.add(CheckItem{"determination", match, name(lhs), expect,
                      match ? "" : "identity mismatch: implementation defect"});
    return rep;
}

std::vector<BigNat> realize_decreasing_chain(const std::vector<std::int64_t>& ds,
                                             const BigNat& prefix) {
    for (std::size_t i = 0; i + 1 < ds.size(); ++i)
        if (!(ds[i] > ds[i + 1] && ds[i + 1] >= 1))
            throw std::invalid_argument("realize_decreasing_chain: need d_1 > ... > d_t >= 1");
    if (ds.empty()) return {prefix};
    std::vector<BigNat> out;
    BigNat x = prefix << static_cast<unsigned>(ds[0]);
    out.push_back(x);
    for (std::int64_t d : ds) {
        x += BigNat(1) << static_cast<unsigned>(d - 1);
        out.push_back(x);
    }
    return out;
}

StepOutcome step_down(const ReductionState& state, const SteppedColoring& sc,
                      const TemplateFamily& tmpl, const Graph& f, std::uint64_t audit_seed) {
    StepOutcome out;
    out.report.suite = "step-down";
    out.report.profile = state.params.profile;
    const int u = state.u;
    if (u < 3) throw std::invalid_argument("step_down: u >= 3 required");
    const ParamSet& params = state.params;
    const std::int64_t n_total = state.n_total;
    out.report.add_context("u", std::to_string(u));
    out.report.add_context("n_u", std::to_string(state.n_u()));

    std::int64_t b_u = params.b_u(u, n_total);
    std::int64_t b_next = params.b_u(u - 1, n_total);
    std::int64_t n_next = params.n_u(u - 1, n_total);
    if (b_u < 1 || b_next < 1 || n_next < 1) {
        out.kind = StepOutcomeKind::breach;
        out.report.add_fail("param-chain", "b_u=" + std::to_string(b_u) + " b_{u-1}=" +
                            std::to_string(b_next) + " n_{u-1}=" + std::to_string(n_next),
                            ">= 1", "alpha/b chain degenerates at this scale");
        return out;
    }

    StepTrace trace;
    try {
        trace = run_interval_procedure(state.xs, params, b_u);
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("step_down[interval]: ") + e.what());
    }
    out.report.merge(trace.validate(params));

    TripleSelection sel;
    try {
        sel = find_triple(trace, params, b_next, sc.universe(u));
    } catch (const std::invalid_argument& e) {
        out.kind = StepOutcomeKind::breach;
        out.report.add_fail("triple-selection", e.what(), "three gaps >= n_u/gap_divisor", "");
        return out;
    } catch (const std::logic_error& e) {
        throw std::runtime_error(std::string("step_down[triple]: ") + e.what());
    }
    ReductionState work = sel.mirrored ? state.mirrored(sc.universe(u)) : state;
    out.report.add_context("mirrored", sel.mirrored ? "1" : "0");
    out.report.add_context("I2", std::to_string(sel.I2.lo) + ".." + std::to_string(sel.I2.hi));
    out.report.add_context("I3", std::to_string(sel.I3.lo) + ".." + std::to_string(sel.I3.hi));

    PruneOutcome pruned;
    try {
        pruned = prune_blocks(work, sel, tmpl, f);
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("step_down[prune]: ") + e.what());
    }
    out.report.merge(pruned.report);

    SeparationOutcome separation = check_separation(pruned.b_prime, sel, work, tmpl, f, sc);
    out.report.merge(separation.report);
    if (!separation.pass && !separation.violations.empty()) {
        out.kind = StepOutcomeKind::counterexample;
        out.separation = std::move(separation);
        return out;
    }

    // R_S / R_B mass dichotomy (observed vs bound, never asserted)
    std::int64_t big_mass = 0, small_mass = 0;
    for (std::size_t si : sel.big_idx) big_mass += sel.S[si].length();
    for (std::size_t si : sel.small_idx) small_mass += sel.S[si].length();
    Rational rb_bound(state.n_u(), params.rb_mass_divisor);
    out.report.add(CheckItem{"rb-mass", Rational(big_mass, 1) <= rb_bound,
                             std::to_string(big_mass), "<= n_u/" + std::to_string(params.rb_mass_divisor) +
                             " = " + to_string(rb_bound),
                             "paper-inequality observed-vs-bound"});

    // U^{u-1}: lexicographically first valid subset of the small blocks
    std::vector<std::int64_t> small_positions;
    for (std::size_t si : sel.small_idx)
        for (std::int64_t p = sel.S[si].lo; p <= sel.S[si].hi; ++p) small_positions.push_back(p);
    std::sort(small_positions.begin(), small_positions.end());
    if (static_cast<std::int64_t>(small_positions.size()) < n_next) {
        out.kind = StepOutcomeKind::breach;
        out.report.add_fail("u-next-supply", std::to_string(small_positions.size()),
                            ">= n_{u-1} = " + std::to_string(n_next),
                            "small-interval mass cannot host U^{u-1}");
        return out;
    }
    std::vector<std::int64_t> u_next(small_positions.begin(),
                                     small_positions.begin() + static_cast<std::ptrdiff_t>(n_next));

    if (sel.I3.length() < n_next) {
        out.kind = StepOutcomeKind::breach;
        out.report.add_fail("w-next-supply", std::to_string(sel.I3.length()),
                            ">= n_{u-1} = " + std::to_string(n_next), "I3 cannot host W_u");
        return out;
    }
    std::vector<int> w_next;
    for (std::int64_t p = sel.I3.lo; p < sel.I3.lo + n_next; ++p)
        w_next.push_back(work.orig[static_cast<std::size_t>(p - 1)]);

    NextEmbedding emb;
    try {
        emb = build_next_embedding(work, sel, u_next);
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("step_down[embedding]: ") + e.what());
    }
    out.report.merge(emb.report);

    // color-determination sampling: u-chains from distinct small blocks plus
    // an I3 witness have strictly decreasing deltas by construction
    {
        Rng rng = make_rng(audit_seed);
        std::map<std::size_t, std::vector<std::int64_t>> by_block;
        for (std::size_t t = 0; t < u_next.size(); ++t) {
            for (std::size_t si : sel.small_idx)
                if (sel.S[si].contains(u_next[t])) by_block[si].push_back(u_next[t]);
        }
        std::vector<std::size_t> blocks_avail;
        for (auto& [si, ps] : by_block) blocks_avail.push_back(si);
        int sampled = 0, mismatches = 0;
        if (static_cast<int>(blocks_avail.size()) >= u - 1) {
            for (int trial = 0; trial < 20; ++trial) {
                auto pick = random_subset(rng, static_cast<int>(blocks_avail.size()), u - 1);
                std::vector<BigNat> chain;
                for (int bi : pick) {
                    const auto& ps = by_block[blocks_avail[static_cast<std::size_t>(bi)]];
                    std::int64_t p = ps[uniform_below(rng, ps.size())];
                    chain.push_back(sel.trace.xs[static_cast<std::size_t>(p - 1)]);
                }
                std::int64_t zp = sel.I3.lo +
                                  static_cast<std::int64_t>(uniform_below(
                                      rng, static_cast<std::uint64_t>(sel.I3.length())));
                chain.push_back(sel.trace.xs[static_cast<std::size_t>(zp - 1)]);
                std::sort(chain.begin(), chain.end());
                bool strict = true;
                for (std::size_t i = 0; i + 1 < chain.size(); ++i)
                    if (chain[i] >= chain[i + 1]) strict = false;
                std::vector<BigNat> ds;
                for (std::size_t i = 0; strict && i + 1 < chain.size(); ++i) {
                    ds.push_back(delta(chain[i], chain[i + 1]));
                    if (i > 0 && !(ds[i - 1] > ds[i])) strict = false;
                }
                if (!strict) continue;
                auto rep = check_color_determination(sc, u, chain);
                ++sampled;
                if (!rep.pass) ++mismatches;
            }
        }
        out.report.add(CheckItem{"color-determination-sample", mismatches == 0,
                                 std::to_string(mismatches) + "/" + std::to_string(sampled),
                                 "0 mismatches", sampled == 0 ? "no eligible chains" : ""});
    }

    // assemble the (u-1)-state: order positions by ascending value (cross-
    // block order reversal makes this the block order reversed), stable by
    // position inside a block
    std::vector<std::size_t> perm(u_next.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
        if (emb.values[a] != emb.values[b]) return emb.values[a] < emb.values[b];
        return u_next[a] < u_next[b];
    });

    ReductionState next;
    next.u = u - 1;
    next.params = params;
    next.coloring_seed = state.coloring_seed;
    next.n_total = n_total;
    next.orig.resize(u_next.size());
    next.xs.resize(u_next.size());
    std::vector<std::int64_t> new_pos_of_old(static_cast<std::size_t>(work.n_u()) + 1, -1);
    for (std::size_t i = 0; i < perm.size(); ++i) {
        std::int64_t old_p = u_next[perm[i]];
        next.orig[i] = work.orig[static_cast<std::size_t>(old_p - 1)];
        next.xs[i] = emb.values[perm[i]];
        new_pos_of_old[static_cast<std::size_t>(old_p)] = static_cast<std::int64_t>(i) + 1;
    }
    next.wsets.clear();
    next.wsets.push_back(w_next);
    for (const auto& ws : state.wsets) next.wsets.push_back(ws);

    // B_i^{u-1} = B'_i cap U^{u-1}, emptied when correlated with U^{u-1}
    std::vector<char> in_unext(static_cast<std::size_t>(work.n_u()) + 1, 0);
    for (std::int64_t p : u_next) in_unext[static_cast<std::size_t>(p)] = 1;
    auto pos_map = position_of(work);
    Rational eps = params.epsilon;
    std::int64_t nonempty_new = 0;
    next.block_positions.resize(tmpl.blocks.size());
    for (std::size_t i = 0; i < tmpl.blocks.size(); ++i) {
        // correlation of U^{u-1} with B_i
        std::int64_t hits = 0;
        for (int v : tmpl.blocks[i]) {
            std::int64_t p = pos_map[static_cast<std::size_t>(v)];
            if (p >= 1 && in_unext[static_cast<std::size_t>(p)]) ++hits;
        }
        Rational expected = Rational(n_next, n_total) * Rational(tmpl.s, 1);
        Rational dev = Rational(hits, 1) - expected;
        if (dev < Rational(0)) dev = -dev;
        if (dev >= eps * Rational(tmpl.s, 1)) continue;  // correlated -> empty
        for (std::int64_t p : pruned.b_prime[i]) {
            if (in_unext[static_cast<std::size_t>(p)] && new_pos_of_old[static_cast<std::size_t>(p)] > 0)
                next.block_positions[i].push_back(new_pos_of_old[static_cast<std::size_t>(p)]);
        }
        std::sort(next.block_positions[i].begin(), next.block_positions[i].end());
        if (!next.block_positions[i].empty()) ++nonempty_new;
    }
    out.report.add_context("nonempty_blocks_next", std::to_string(nonempty_new));

    // claim point-b audit on the new family (observed vs bound)
    {
        Rational lower = (Rational(1, 1) - eps) * params.alpha_u(u - 1) * Rational(tmpl.s, 1);
        std::int64_t worst_cover = -1;
        for (std::size_t i = 0; i < next.block_positions.size(); ++i) {
            if (next.block_positions[i].empty()) continue;
            std::int64_t cover = 0;
            for (int v : tmpl.blocks[i]) {
                std::int64_t p = pos_map[static_cast<std::size_t>(v)];
                if (p >= 1 && in_unext[static_cast<std::size_t>(p)]) ++cover;
            }
            if (worst_cover < 0 || cover < worst_cover) worst_cover = cover;
        }
        if (worst_cover >= 0)
            out.report.add(CheckItem{"point-b-cover", Rational(worst_cover, 1) >= lower,
                                     std::to_string(worst_cover),
                                     ">= (1-eps)*alpha_{u-1}*s = " + to_string(lower),
                                     "paper-inequality observed-vs-bound"});
    }

    out.kind = StepOutcomeKind::advanced;
    out.next = std::move(next);
    return out;
}

ReductionState make_initial_state(int k, const ParamSet& params, std::uint64_t coloring_seed,
                                  const std::vector<BigNat>& values, const TemplateFamily& tmpl) {
    ReductionState st;
    st.u = k;
    st.params = params;
    st.coloring_seed = coloring_seed;
    st.n_total = tmpl.n;
    if (static_cast<int>(values.size()) != tmpl.n)
        throw std::invalid_argument("make_initial_state: one value per template vertex required");
    std::vector<int> order(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (values[static_cast<std::size_t>(a)] != values[static_cast<std::size_t>(b)])
            return values[static_cast<std::size_t>(a)] < values[static_cast<std::size_t>(b)];
        return a < b;
    });
    st.orig.assign(order.begin(), order.end());
    st.xs.resize(values.size());
    std::vector<std::int64_t> pos_of(values.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        st.xs[i] = values[static_cast<std::size_t>(order[i])];
        pos_of[static_cast<std::size_t>(order[i])] = static_cast<std::int64_t>(i) + 1;
    }
    for (const auto& block : tmpl.blocks) {
        std::vector<std::int64_t> ps;
        for (int v : block) ps.push_back(pos_of[static_cast<std::size_t>(v)]);
        std::sort(ps.begin(), ps.end());
        st.block_positions.push_back(std::move(ps));
    }
    return st;
}

void ReductionState::save(std::ostream& os) const {
    os << "reductionstate v=1 u=" << u << " nu=" << n_u() << " n=" << n_total
       << " coloring_seed=" << coloring_seed << "\n";
    params.save(os);
    os << "section xs\n";
    for (const auto& x : xs) os << std::hex << x << std::dec << "\n";
    os << "section orig\n";
    for (std::size_t i = 0; i < orig.size(); ++i) os << orig[i] << (i + 1 < orig.size() ? " " : "");
    os << "\n";
    os << "section wsets count=" << wsets.size() << "\n";
    for (const auto& w : wsets) {
        os << w.size();
        for (int v : w) os << " " << v;
        os << "\n";
    }
    os << "section blocks count=" << block_positions.size() << "\n";
    for (const auto& b : block_positions) {
        os << b.size();
        for (std::int64_t p : b) os << " " << p;
        os << "\n";
    }
    os << "end\n";
}

ReductionState ReductionState::load(std::istream& is) {
    ReductionState st;
    std::string line;
    if (!std::getline(is, line) || line.rfind("reductionstate v=1", 0) != 0)
        throw std::invalid_argument("reductionstate: bad header");
    std::int64_t nu = 0;
    {
        std::istringstream hs(line.substr(18));
        std::string tok;
        while (hs >> tok) {
            auto eq = tok.find('=');
            if (eq == std::string::npos) continue;
            auto key = tok.substr(0, eq);
            auto val = tok.substr(eq + 1);
            if (key == "u") st.u = std::stoi(val);
            else if (key == "nu") nu = std::stoll(val);
            else if (key == "n") st.n_total = std::stoll(val);
            else if (key == "coloring_seed") st.coloring_seed = std::stoull(val);
        }
    }
    st.params = ParamSet::load(is);
    if (!std::getline(is, line) || line != "section xs")
        throw std::invalid_argument("reductionstate: expected xs section");
    st.xs.resize(static_cast<std::size_t>(nu));
    for (auto& x : st.xs) {
        if (!std::getline(is, line)) throw std::invalid_argument("reductionstate: missing xs row");
        x = BigNat("0x" + line);
    }
    if (!std::getline(is, line) || line != "section orig")
        throw std::invalid_argument("reductionstate: expected orig section");
    if (!std::getline(is, line)) throw std::invalid_argument("reductionstate: missing orig row");
    {
        std::istringstream ls(line);
        int v;
        while (ls >> v) st.orig.push_back(v);
        if (static_cast<std::int64_t>(st.orig.size()) != nu)
            throw std::invalid_argument("reductionstate: orig row arity mismatch");
    }
    if (!std::getline(is, line) || line.rfind("section wsets count=", 0) != 0)
        throw std::invalid_argument("reductionstate: expected wsets section");
    std::size_t wcount = std::stoull(line.substr(20));
    for (std::size_t i = 0; i < wcount; ++i) {
        if (!std::getline(is, line)) throw std::invalid_argument("reductionstate: missing wset row");
        std::istringstream ls(line);
        std::size_t sz;
        ls >> sz;
        std::vector<int> w(sz);
        for (auto& v : w) ls >> v;
        st.wsets.push_back(std::move(w));
    }
    if (!std::getline(is, line) || line.rfind("section blocks count=", 0) != 0)
        throw std::invalid_argument("reductionstate: expected blocks section");
    std::size_t bcount = std::stoull(line.substr(21));
    for (std::size_t i = 0; i < bcount; ++i) {
        if (!std::getline(is, line)) throw std::invalid_argument("reductionstate: missing block row");
        std::istringstream ls(line);
        std::size_t sz;
        ls >> sz;
        std::vector<std::int64_t> b(sz);
        for (auto& p : b) ls >> p;
        st.block_positions.push_back(std::move(b));
    }
    return st;
}

}  // namespace stepup
