#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <string>

#include "pcc/errors.hpp"

namespace pcc {

using Rational = boost::rational<long long>;

inline double to_double(const Rational& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

/// Parses "p/q" or a plain integer.
inline Rational parse_rational(const std::string& s) {
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(std::stoll(s), 1);
        const long long num = std::stoll(s.substr(0, slash));
        const long long den = std::stoll(s.substr(slash + 1));
        if (den == 0) throw InvalidParams("rational with zero denominator: " + s);
        return Rational(num, den);
    } catch (const std::invalid_argument&) {
        throw InvalidParams("not a rational: " + s);
    } catch (const std::out_of_range&) {
        throw InvalidParams("rational out of range: " + s);
    }
}

inline std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace pcc
