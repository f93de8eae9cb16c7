#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "reeb/error.hpp"

namespace reeb {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer parse_integer(std::string_view text)
{
    std::string s(text);
    auto first = s.find_first_not_of(" \t");
    auto last = s.find_last_not_of(" \t");
    if (first == std::string::npos)
        throw StructuralError("empty integer literal");
    s = s.substr(first, last - first + 1);
    std::size_t digits = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (digits == s.size())
        throw StructuralError("bad integer literal '" + s + "'");
    for (std::size_t i = digits; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9')
            throw StructuralError("bad integer literal '" + s + "'");
    if (s[0] == '+')
        s.erase(0, 1);
    return Integer(s);
}

/// Parses "p", "-p" or "p/q" into an exact rational.
inline Rational parse_rational(std::string_view text)
{
    auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return Rational(parse_integer(text));
    Integer num = parse_integer(text.substr(0, slash));
    Integer den = parse_integer(text.substr(slash + 1));
    if (den == 0)
        throw StructuralError("zero denominator in '" + std::string(text) + "'");
    return Rational(num) / Rational(den);
}

inline bool is_integral(const Rational& r) { return denominator(r) == 1; }

inline std::string to_string(const Integer& i) { return i.str(); }

inline std::string to_string(const Rational& r)
{
    if (is_integral(r))
        return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

inline bool fits_int64(const Integer& i)
{
    return i >= std::numeric_limits<std::int64_t>::min() &&
           i <= std::numeric_limits<std::int64_t>::max();
}

}  // namespace reeb
