#include "wzcert/rational.hpp"

#include <limits>

#include "wzcert/errors.hpp"

namespace wzcert {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw DivisionByZero("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(s));
    return make_rational(Integer(s.substr(0, slash)), Integer(s.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    throw Error("malformed rational '" + s + "'");
  }
}

std::string to_string(const Integer& z) { return z.get_str(); }

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

long to_long(const Rational& q) {
  if (!is_integer(q) || !q.get_num().fits_slong_p()) {
    throw Error("value " + to_string(q) + " is not a machine integer");
  }
  return q.get_num().get_si();
}

Integer factorial(long n) {
  if (n < 0) throw Error("factorial of negative integer");
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

Integer binomial(long n, long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

Rational power(const Rational& q, long e) {
  if (e < 0) {
    if (q == 0) throw DivisionByZero("zero raised to a negative power");
    return power(1 / q, -e);
  }
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), q.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(den.get_mpz_t(), q.get_den_mpz_t(), static_cast<unsigned long>(e));
  return Rational(num, den);
}

Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

}  // namespace wzcert
