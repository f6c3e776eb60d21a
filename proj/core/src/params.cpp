#include "stepup/params.hpp"

#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace stepup {

ParamSet ParamSet::paper(int k, int m) {
    ParamSet p;
    p.profile = "paper";
    p.uniformity = k;
    p.m = m;
    p.base_exponent_coeff = Rational(1, 100000000);  // 10^-8
    p.weight_threshold = Rational(51, 100);
    p.partition_threshold = Rational(55, 100);
    // epsilon = 10^-6k and s = 10^20k * m overflow int64 for k >= 4; keep the
    // k = 3 literals and saturate beyond (the paper profile exists for
    // symbolic checks, not for running generators)
    std::int64_t e = 1;
    for (int i = 0; i < 6 * k && e < std::int64_t{1} << 60; ++i) e *= 10;
    p.epsilon = Rational(1, e);
    std::int64_t s = 1;
    for (int i = 0; i < 20 * k && s < std::int64_t{1} << 60; ++i) s *= 10;
    p.s_coeff = Rational(s, 1);
    p.alpha_base = 100000;
    p.stop_divisor = 2000;
    p.gap_divisor = 1024;
    p.rb_mass_divisor = 10000;
    p.alpha_good = p.epsilon;
    p.goodness_C = std::int64_t{1} << 62;  // stands in for (16/eps)^(5k)
    p.template_degree_cap = std::int64_t{1} << 40;
    p.template_block_count = 0;
    p.expander_degree = 12;
    return p;
}

ParamSet ParamSet::desk(int k, int m) {
    ParamSet p;
    p.profile = "desk";
    p.uniformity = k;
    p.m = m;
    p.base_exponent_coeff = Rational(3, m);  // M_2 = 8, M_3 = 128
    p.epsilon = Rational(1, 10);
    p.s_coeff = Rational(10, 1);
    p.alpha_base = 8;
    p.stop_divisor = 2000;
    p.gap_divisor = 1024;
    p.rb_mass_divisor = 16;
    p.alpha_good = Rational(1, 4);
    p.goodness_C = 50;
    p.template_degree_cap = 8;
    p.template_block_count = 0;
    p.expander_degree = 12;
    return p;
}

void ParamSet::validate() const {
    if (uniformity < 2) throw std::invalid_argument("uniformity must be >= 2");
    if (m < 1) throw std::invalid_argument("m must be >= 1");
    if (!(Rational(0) < weight_threshold && weight_threshold < partition_threshold &&
          partition_threshold < Rational(1)))
        throw std::invalid_argument("need 0 < weight_threshold < partition_threshold < 1");
    if (stop_divisor < 1 || gap_divisor < 1)
        throw std::invalid_argument("divisors must be positive");
    // mirrors n_u/256 > 2 n_u/gap + n_u/stop
    Rational lhs(1, 256);
    Rational rhs = Rational(2, gap_divisor) + Rational(1, stop_divisor);
    if (!(lhs > rhs))
        throw std::invalid_argument(
            "triple-finding infeasible: 1/256 <= 2/gap_divisor + 1/stop_divisor (gap=" +
            std::to_string(gap_divisor) + ", stop=" + std::to_string(stop_divisor) + ")");
    if (base_exponent_coeff <= Rational(0))
        throw std::invalid_argument("base_exponent_coeff must be positive");
    if (epsilon <= Rational(0) || epsilon >= Rational(1))
        throw std::invalid_argument("epsilon must lie in (0,1)");
}

Rational ParamSet::alpha_u(int u) const {
    int e = uniformity - u;
    std::int64_t d = 1;
    for (int i = 0; i < e; ++i) d *= alpha_base;
    return Rational(1, d);
}

std::int64_t ParamSet::b_u(int u, std::int64_t n) const {
    // alpha_base^(-k-u+4) * n/m
    int e = uniformity + u - 4;
    Rational r(n, m);
    if (e >= 0) {
        std::int64_t d = 1;
        for (int i = 0; i < e; ++i) d *= alpha_base;
        r /= Rational(d, 1);
    } else {
        std::int64_t d = 1;
        for (int i = 0; i < -e; ++i) d *= alpha_base;
        r *= Rational(d, 1);
    }
    return floor_to_int(r);
}

std::int64_t ParamSet::n_u(int u, std::int64_t n) const {
    return floor_to_int(alpha_u(u) * Rational(n, 1));
}

Rational ParamSet::paper_goodness_C() const {
    Rational base = Rational(16, 1) / alpha_good;
    Rational out(1, 1);
    for (int i = 0; i < 5 * uniformity; ++i) {
        // boost::rational throws on overflow only in checked ops; guard by hand
        if (base.numerator() != 0 &&
            out.numerator() > (std::int64_t{1} << 62) / std::max<std::int64_t>(base.numerator(), 1))
            throw std::overflow_error("(16/alpha)^(5k) exceeds int64 range");
        out *= base;
    }
    return out;
}

void ParamSet::save(std::ostream& os) const {
    os << "paramset schema=1 profile=" << profile << "\n";
    os << "k " << uniformity << "\n";
    os << "m " << m << "\n";
    os << "base_exponent_coeff " << to_string(base_exponent_coeff) << "\n";
    os << "weight_threshold " << to_string(weight_threshold) << "\n";
    os << "partition_threshold " << to_string(partition_threshold) << "\n";
    os << "epsilon " << to_string(epsilon) << "\n";
    os << "s_coeff " << to_string(s_coeff) << "\n";
    os << "alpha_base " << alpha_base << "\n";
    os << "stop_divisor " << stop_divisor << "\n";
    os << "gap_divisor " << gap_divisor << "\n";
    os << "rb_mass_divisor " << rb_mass_divisor << "\n";
    os << "alpha_good " << to_string(alpha_good) << "\n";
    os << "goodness_C " << goodness_C << "\n";
    os << "template_degree_cap " << template_degree_cap << "\n";
    os << "template_block_count " << template_block_count << "\n";
    os << "expander_degree " << expander_degree << "\n";
}

ParamSet ParamSet::load(std::istream& is) {
    ParamSet p;
    std::string line;
    if (!std::getline(is, line) || line.rfind("paramset schema=1", 0) != 0)
        throw std::invalid_argument("paramset: bad header line");
    auto pos = line.find("profile=");
    if (pos != std::string::npos) p.profile = line.substr(pos + 8);
    std::map<std::string, std::string> kv;
    while (std::getline(is, line)) {
        if (line.empty()) break;
        std::istringstream ls(line);
        std::string key, value;
        ls >> key >> value;
        kv[key] = value;
    }
    auto geti = [&](const std::string& k, std::int64_t& out) {
        if (kv.count(k)) out = std::stoll(kv[k]);
    };
    auto getr = [&](const std::string& k, Rational& out) {
        if (kv.count(k)) out = parse_rational(kv[k]);
    };
    std::int64_t tmp;
    if (kv.count("k")) p.uniformity = std::stoi(kv["k"]);
    if (kv.count("m")) p.m = std::stoi(kv["m"]);
    getr("base_exponent_coeff", p.base_exponent_coeff);
    getr("weight_threshold", p.weight_threshold);
    getr("partition_threshold", p.partition_threshold);
    getr("epsilon", p.epsilon);
    getr("s_coeff", p.s_coeff);
    geti("alpha_base", p.alpha_base);
    geti("stop_divisor", p.stop_divisor);
    geti("gap_divisor", p.gap_divisor);
    geti("rb_mass_divisor", p.rb_mass_divisor);
    getr("alpha_good", p.alpha_good);
    geti("goodness_C", p.goodness_C);
    geti("template_degree_cap", p.template_degree_cap);
    geti("template_block_count", p.template_block_count);
    if (kv.count("expander_degree")) {
        geti("expander_degree", tmp = 0);
        p.expander_degree = static_cast<int>(std::stoll(kv["expander_degree"]));
    }
    return p;
}

}  // namespace stepup
