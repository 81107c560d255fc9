#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <string_view>

namespace wzcert {

using Integer = mpz_class;
using Rational = mpq_class;

/// Assignment of exact values to named variables.
using Point = std::map<std::string, Rational>;

/// Builds num/den in lowest terms. Throws DivisionByZero when den is zero.
Rational make_rational(const Integer& num, const Integer& den);

/// Parses "p", "-p" or "p/q".
Rational parse_rational(std::string_view text);

std::string to_string(const Integer& z);
std::string to_string(const Rational& q);

bool is_integer(const Rational& q);

/// Exact value of q as a long. q must be an integer that fits.
long to_long(const Rational& q);

Integer factorial(long n);
Integer binomial(long n, long k);

/// q^e for any integer e; throws DivisionByZero for 0^e with e < 0.
Rational power(const Rational& q, long e);

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);

}  // namespace wzcert
