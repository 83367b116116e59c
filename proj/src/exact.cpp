#include "flatstats/exact.hpp"

#include <stdexcept>

namespace flatstats {

std::string to_decimal(const Rational& r, int digits) {
    if (digits < 1) throw std::invalid_argument("to_decimal: digits must be >= 1");
    Integer num = numerator(r);
    const Integer den = denominator(r);
    if (num == 0) return "0";
    const bool negative = num < 0;
    if (negative) num = -num;

    // Find e with 10^e <= num/den < 10^(e+1).
    int e = 0;
    {
        Integer ip = num / den;
        if (ip > 0) {
            e = static_cast<int>(ip.str().size()) - 1;
        } else {
            Integer scaled = num;
            while (scaled < den) {
                scaled *= 10;
                --e;
            }
        }
    }

    // scaled = round(num/den * 10^(digits-1-e))
    const int shift = digits - 1 - e;
    Integer n2 = num, d2 = den;
    if (shift >= 0) {
        n2 *= boost::multiprecision::pow(Integer(10), static_cast<unsigned>(shift));
    } else {
        d2 *= boost::multiprecision::pow(Integer(10), static_cast<unsigned>(-shift));
    }
    Integer q = n2 / d2;
    Integer rem = n2 % d2;
    if (2 * rem >= d2) q += 1;
    int point = shift;  // number of digits after the decimal point in q
    std::string body = q.str();
    if (point > 0) {
        if (static_cast<int>(body.size()) <= point) {
            body.insert(0, static_cast<std::size_t>(point - static_cast<int>(body.size()) + 1), '0');
        }
        body.insert(body.size() - static_cast<std::size_t>(point), ".");
        // Trim trailing zeros in the fractional part.
        while (body.back() == '0') body.pop_back();
        if (body.back() == '.') body.pop_back();
    } else if (point < 0) {
        body.append(static_cast<std::size_t>(-point), '0');
    }
    return negative ? "-" + body : body;
}

std::string to_fraction_string(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

Rational parse_rational(const std::string& text) {
    auto parse_int = [&](const std::string& s) {
        if (s.empty()) throw std::invalid_argument("malformed rational: '" + text + "'");
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) throw std::invalid_argument("malformed rational: '" + text + "'");
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("malformed rational: '" + text + "'");
        }
        return Integer(s[0] == '+' ? s.substr(1) : s);
    };
    const auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(parse_int(text));
    const Integer den = parse_int(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("rational with zero denominator: '" + text + "'");
    return Rational(parse_int(text.substr(0, slash)), den);
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace flatstats
