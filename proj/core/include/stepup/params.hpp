#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "stepup/rational.hpp"

namespace stepup {

// Every named constant of the construction in one place, in two profiles:
// "paper" carries the literal values (mostly unusable outside symbolic
// checks), "desk" scales them down while preserving the inequalities the
// arguments rely on. Reports always name the active profile.
struct ParamSet {
    std::string profile = "desk";

    int uniformity = 3;  // k
    int m = 4;

    // M_2(m) = 2^max(1, floor(base_exponent_coeff * m))
    Rational base_exponent_coeff{3, 4};

    Rational weight_threshold{51, 100};     // base-coloring inequality
    Rational partition_threshold{55, 100};  // G_m cross-pair mass

    Rational epsilon{1, 10};  // paper: 10^(-6k)
    Rational s_coeff{10, 1};  // block size s = s_coeff * m; paper: 10^(20k)

    std::int64_t alpha_base = 8;  // paper: 10^5; alpha_u = alpha_base^(-k+u)

    std::int64_t stop_divisor = 2000;      // interval procedure stop threshold
    std::int64_t gap_divisor = 1024;       // triple-finding gap threshold
    std::int64_t rb_mass_divisor = 10000;  // big-interval mass dichotomy

    // goodness: paper C = (16/alpha_good)^(5k); desk uses an explicit cap
    Rational alpha_good{1, 4};  // paper: 10^(-6k) (the construction's epsilon)
    std::int64_t goodness_C = 50;

    // template generation: desk decouples the block count K from the degree
    // cap C (the paper couples them through K = sqrt(C) n / s, infeasible at
    // desk scale; see gen_template)
    std::int64_t template_degree_cap = 8;
    std::int64_t template_block_count = 0;  // 0: derive n/(2s)

    int expander_degree = 12;  // d of the d-regular expander F

    static ParamSet paper(int k, int m);
    static ParamSet desk(int k, int m);
    static ParamSet load(std::istream& is);
    void save(std::ostream& os) const;

    // The triple-finding claim needs five quartering rounds to fit:
    //   n_u/256 > 2*n_u/gap_divisor + n_u/stop_divisor.
    // Throws std::invalid_argument when violated, along with basic ordering
    // constraints among the thresholds.
    void validate() const;

    Rational alpha_u(int u) const;  // alpha_base^(-k+u)
    // b_u = alpha_base^(-k-u+4) * n/m (the claim's cap chain)
    std::int64_t b_u(int u, std::int64_t n) const;
    std::int64_t n_u(int u, std::int64_t n) const;  // alpha_u * n, floored

    Rational paper_goodness_C() const;  // (16/alpha_good)^(5k), may overflow -> throws
};

}  // namespace stepup
