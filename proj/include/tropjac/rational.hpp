#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace tropjac {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Parses "p/q" or "n" (optional leading '-'). Throws InvalidInput on
/// anything else, including a zero denominator.
Rational parse_rational(std::string_view text);

/// Lowest terms, positive denominator, "n" when the denominator is 1.
std::string to_string(const Rational& q);

Integer floor(const Rational& q);
Rational frac(const Rational& q);
bool is_integer(const Rational& q);

Integer lcm(const Integer& a, const Integer& b);

/// Least common multiple of the denominators.
Integer common_denominator(const std::vector<Rational>& values);

}  // namespace tropjac
