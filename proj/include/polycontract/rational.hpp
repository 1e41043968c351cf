#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace polycontract {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Largest distance exponent accepted anywhere (d^i, family degree k).
inline constexpr unsigned kMaxDistancePower = 64;

/// Parses "3", "-7/2" or an exact decimal like "0.25" / "-1.5e-3".
/// Throws InputError on anything else. No floating point is involved;
/// decimals convert exactly.
Rational parse_rational(std::string_view text);

/// Canonical form: "p/q" with q > 1, otherwise just "p".
std::string to_string(const Rational& value);

/// base^exp with the convention 0^0 = 1.
Rational rational_pow(const Rational& base, unsigned exp);

/// Floor of the n-th root of a non-negative integer (n >= 1).
Int floor_nth_root(const Int& value, unsigned n);

inline Rational rational_abs(const Rational& value) {
    return value < 0 ? Rational(-value) : value;
}

}  // namespace polycontract
