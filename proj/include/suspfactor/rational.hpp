#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace suspfactor {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Floor division for rationals (cpp_int '/' truncates toward zero).
inline Int rational_floor(const Rational& r) {
    Int n = numerator(r), d = denominator(r);  // d > 0 canonical
    Int q = n / d;
    if (n % d != 0 && n < 0) --q;
    return q;
}

// Canonical "p/q" text, always with the slash ("3/4", "-1/2", "5/1").
inline std::string rational_to_string(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

// Accepts "p/q" or a bare integer "p". Throws std::invalid_argument on junk.
Rational parse_rational(const std::string& text);

}  // namespace suspfactor
