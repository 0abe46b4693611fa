#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include "syzmod/errors.hpp"

namespace syzmod {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline bool is_integer(const Rational& q) { return boost::multiprecision::denominator(q) == 1; }

inline Integer numerator_of(const Rational& q) { return boost::multiprecision::numerator(q); }

/// Converts an integral rational to int64, throwing when it does not fit or is
/// not integral.
inline std::int64_t to_int64(const Rational& q) {
    if (!is_integer(q)) throw InternalError("expected an integer, got " + q.str());
    const Integer z = numerator_of(q);
    if (z > std::numeric_limits<std::int64_t>::max() || z < std::numeric_limits<std::int64_t>::min())
        throw InternalError("integer out of int64 range: " + z.str());
    return static_cast<std::int64_t>(z);
}

inline std::string to_string(const Rational& q) { return q.str(); }

/// Parses "p", "-p" or "p/q".
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    auto bad = [&]() { return ParseError("not a rational number: '" + s + "'"); };
    if (s.empty()) throw bad();
    auto check_digits = [&](std::string_view part, bool allow_sign) {
        std::size_t i = 0;
        if (allow_sign && !part.empty() && (part[0] == '-' || part[0] == '+')) ++i;
        if (i == part.size()) throw bad();
        for (; i < part.size(); ++i)
            if (part[i] < '0' || part[i] > '9') throw bad();
    };
    const auto slash = s.find('/');
    if (slash == std::string::npos) {
        check_digits(s, true);
        return Rational(Integer(s[0] == '+' ? s.substr(1) : s));
    }
    const std::string num = s.substr(0, slash);
    const std::string den = s.substr(slash + 1);
    check_digits(num, true);
    check_digits(den, false);
    Integer d(den);
    if (d == 0) throw ParseError("zero denominator in '" + s + "'");
    return Rational(Integer(num[0] == '+' ? num.substr(1) : num), d);
}

/// Generalized binomial coefficient C(m, k) for any integer m and k >= 0.
inline Rational binomial(const Rational& m, std::int64_t k) {
    if (k < 0) return Rational(0);
    Rational r(1);
    for (std::int64_t i = 0; i < k; ++i) r = r * (m - i) / (i + 1);
    return r;
}

/// Ordinary binomial on int64 for non-negative top; zero when k > m or k < 0.
inline std::int64_t binom64(std::int64_t m, std::int64_t k) {
    if (k < 0 || m < 0 || k > m) return 0;
    if (k > m - k) k = m - k;
    Integer r = 1;
    for (std::int64_t i = 0; i < k; ++i) r = r * (m - i) / (i + 1);
    if (r > std::numeric_limits<std::int64_t>::max()) throw InternalError("binomial overflow");
    return static_cast<std::int64_t>(r);
}

inline Rational factorial(std::int64_t k) {
    Rational r(1);
    for (std::int64_t i = 2; i <= k; ++i) r *= i;
    return r;
}

}  // namespace syzmod
