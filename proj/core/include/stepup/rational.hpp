#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace stepup {

using Rational = boost::rational<std::int64_t>;

inline std::string to_string(const Rational& r) {
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

// Parses "p", "p/q" or a plain decimal like "0.51".
inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        std::int64_t p = std::stoll(s.substr(0, slash));
        std::int64_t q = std::stoll(s.substr(slash + 1));
        if (q == 0) throw std::invalid_argument("rational with zero denominator: " + s);
        return Rational(p, q);
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) return Rational(std::stoll(s), 1);
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    std::int64_t den = 1;
    for (size_t i = dot + 1; i < s.size(); ++i) den *= 10;
    return Rational(std::stoll(digits), den);
}

inline std::int64_t floor_to_int(const Rational& r) {
    std::int64_t q = r.numerator() / r.denominator();
    if (r.numerator() % r.denominator() != 0 && r.numerator() < 0) --q;
    return q;
}

inline std::int64_t ceil_to_int(const Rational& r) {
    std::int64_t q = r.numerator() / r.denominator();
    if (r.numerator() % r.denominator() != 0 && r.numerator() > 0) ++q;
    return q;
}

}  // namespace stepup
