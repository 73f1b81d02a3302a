#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <string>
#include <string_view>

#include "toricap/error.hpp"

namespace toricap {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(long long num, long long den = 1) {
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return Rational(Integer(num), Integer(den));
}

/// Parses "p/q", "-3" or "0.125". Decimals convert exactly; exponent notation is rejected.
inline Rational parse_rational(std::string_view text) {
    auto fail = [&](const char* why) -> Rational {
        throw Error(ErrorCode::ParseError, std::string(why) + " in rational '" + std::string(text) + "'");
    };
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) return fail("empty");

    auto parse_int = [&](std::string_view s) -> Integer {
        bool neg = false;
        if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
            neg = s.front() == '-';
            s.remove_prefix(1);
        }
        if (s.empty()) fail("missing digits");
        Integer v = 0;
        for (char c : s) {
            if (!std::isdigit(static_cast<unsigned char>(c))) fail("unexpected character");
            v = v * 10 + (c - '0');
        }
        return neg ? Integer(-v) : v;
    };

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        Integer num = parse_int(text.substr(0, slash));
        Integer den = parse_int(text.substr(slash + 1));
        if (den == 0) return fail("zero denominator");
        if (den < 0) return Rational(Integer(-num), Integer(-den));
        return Rational(num, den);
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view whole = text.substr(0, dot);
        std::string_view frac = text.substr(dot + 1);
        bool neg = !whole.empty() && whole.front() == '-';
        if (!whole.empty() && (whole.front() == '-' || whole.front() == '+')) whole.remove_prefix(1);
        Integer w = whole.empty() ? Integer(0) : parse_int(whole);
        Integer f = frac.empty() ? Integer(0) : parse_int(frac);
        if (!frac.empty() && (frac.front() == '-' || frac.front() == '+')) fail("misplaced sign");
        Integer scale = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(frac.size()));
        Rational r(w * scale + f, scale);
        return neg ? Rational(-r) : r;
    }
    return Rational(parse_int(text));
}

/// Canonical lowest-terms rendering: "p/q", or "p" when q == 1.
inline std::string to_string(const Rational& r) {
    const Integer& num = boost::multiprecision::numerator(r);
    const Integer& den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline Integer floor_div(const Rational& r) {
    const Integer& num = boost::multiprecision::numerator(r);
    const Integer& den = boost::multiprecision::denominator(r);
    Integer q = num / den;
    if (num % den != 0 && num < 0) q -= 1;
    return q;
}

inline Integer ceil_div(const Rational& r) { return -floor_div(Rational(-r)); }

inline Integer factorial(long long n) {
    Integer out = 1;
    for (long long i = 2; i <= n; ++i) out *= i;
    return out;
}

}  // namespace toricap
