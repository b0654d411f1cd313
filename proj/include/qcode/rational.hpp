#pragma once

// Exact rationals. Every aliasing index, wordlength-pattern entry and
// resolution produced by this library is a dyadic rational; they are kept
// exact end to end and only rendered to decimal at the output boundary.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace qcode {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) { return Rational(BigInt(num), BigInt(den)); }

/// 2^(-e) for e >= 0.
inline Rational pow2_neg(std::uint64_t e)
{
    BigInt den = 1;
    den <<= static_cast<unsigned>(e);
    return Rational(BigInt(1), den);
}

/// True when the reduced denominator is a power of two.
inline bool is_dyadic(const Rational& r)
{
    const BigInt den = boost::multiprecision::denominator(r);
    return den > 0 && (den & (den - 1)) == 0;
}

/// "num/den", always with an explicit denominator ("4/1", "13/2").
inline std::string to_fraction_string(const Rational& r)
{
    return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

inline Rational parse_fraction(const std::string& s)
{
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(BigInt(s));
    return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
}

/// Decimal rendering rounded half away from zero to `digits` places.
inline std::string to_decimal_string(const Rational& r, unsigned digits)
{
    BigInt scale = 1;
    for (unsigned i = 0; i < digits; ++i) scale *= 10;
    const bool negative = r < 0;
    const Rational scaled = (negative ? -r : r) * Rational(scale);
    const BigInt num = boost::multiprecision::numerator(scaled);
    const BigInt den = boost::multiprecision::denominator(scaled);
    const BigInt rounded = (2 * num + den) / (2 * den);

    std::string body = rounded.str();
    if (digits > 0) {
        if (body.size() <= digits) body.insert(0, digits + 1 - body.size(), '0');
        body.insert(body.size() - digits, ".");
    }
    return negative && rounded != 0 ? "-" + body : body;
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

} // namespace qcode
