#pragma once

// Exact integer and rational types used throughout the library, plus the
// presentation-only decimal renderer.

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace flatstats {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer pow2(unsigned e) { return Integer(1) << e; }

inline Rational make_rational(const Integer& num, const Integer& den) {
    return Rational(num, den);
}

inline Integer numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

/// Renders r with `digits` significant digits (round half away from zero).
/// Scientific notation is never used; very small values produce leading zeros.
std::string to_decimal(const Rational& r, int digits = 12);

/// "p/q" in lowest terms; integers render as "p/1".
std::string to_fraction_string(const Rational& r);

/// Parses "p/q" or "p" (decimal integers, optional sign on p).
Rational parse_rational(const std::string& text);

double to_double(const Rational& r);

}  // namespace flatstats
