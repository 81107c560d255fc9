#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wzcert/rational.hpp"

namespace wzcert {

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// The variable universe is kept sorted by name; two polynomials over
/// different universes are aligned by name before any arithmetic, so an
/// unused variable in the universe never changes the value or the canonical
/// form. Terms are ordered graded-lexicographically with respect to the
/// sorted universe, and zero coefficients are never stored.
class MultiPoly {
 public:
  using Exponents = std::vector<int>;

  struct GrlexLess {
    bool operator()(const Exponents& a, const Exponents& b) const;
  };

  using TermMap = std::map<Exponents, Rational, GrlexLess>;

  MultiPoly() = default;
  MultiPoly(const Rational& c);  // NOLINT(google-explicit-constructor)
  MultiPoly(long c);             // NOLINT(google-explicit-constructor)
  MultiPoly(int c) : MultiPoly(static_cast<long>(c)) {}  // NOLINT

  /// `vars` need not be sorted; exponent vectors follow the given order.
  MultiPoly(const std::vector<std::string>& vars, const TermMap& terms);

  static MultiPoly variable(const std::string& name);

  const std::vector<std::string>& variables() const { return vars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Value of a constant polynomial; throws if the polynomial is not constant.
  Rational constant_value() const;
  /// Coefficient of the all-zero exponent vector.
  Rational constant_coefficient() const;

  bool depends_on(const std::string& var) const;
  std::vector<std::string> occurring_variables() const;

  int degree(const std::string& var) const;
  int total_degree() const;

  /// Leading term under graded-lex on the sorted universe.
  const Exponents& leading_exponents() const;
  const Rational& leading_coefficient() const;

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& other);
  MultiPoly& operator-=(const MultiPoly& other);
  MultiPoly& operator*=(const MultiPoly& other);
  MultiPoly& operator*=(const Rational& c);

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);

  MultiPoly pow(unsigned e) const;

  friend bool operator==(const MultiPoly& a, const MultiPoly& b);
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

  /// Re-expresses the polynomial over a (sorted) superset universe.
  MultiPoly embedded(const std::vector<std::string>& universe) const;

  /// Coefficients with respect to `var`; entry i multiplies var^i and is
  /// free of `var`.
  std::vector<MultiPoly> coefficients_in(const std::string& var) const;
  static MultiPoly from_coefficients(const std::string& var, const std::vector<MultiPoly>& coeffs);
  /// Leading coefficient with respect to `var` (free of `var`).
  MultiPoly leading_coefficient_in(const std::string& var) const;

  MultiPoly substitute(const std::string& var, const MultiPoly& value) const;
  MultiPoly shifted(const std::string& var, long h) const;
  MultiPoly renamed(const std::map<std::string, std::string>& names) const;

  /// Full evaluation; every occurring variable must be assigned.
  Rational evaluate(const Point& point) const;
  /// Substitutes the assigned variables and keeps the rest symbolic.
  MultiPoly partial_evaluate(const Point& point) const;

  /// Positive rational c such that p / c has coprime integer coefficients.
  Rational content() const;
  /// p = unit * primitive, primitive has coprime integer coefficients and a
  /// positive leading coefficient. For zero the unit is 0 and primitive is 0.
  std::pair<Rational, MultiPoly> canonical_split() const;
  MultiPoly primitive() const { return canonical_split().second; }

  /// Total order used for canonical sorting of containers.
  friend bool operator<(const MultiPoly& a, const MultiPoly& b);

  std::string to_string() const;
  /// Prints with `priority` variables ranked first in the display ordering.
  std::string to_string(const std::vector<std::string>& priority) const;

 private:
  void drop_zeros();
  static std::vector<std::string> merged_universe(const std::vector<std::string>& a,
                                                  const std::vector<std::string>& b);

  std::vector<std::string> vars_;
  TermMap terms_;
};

/// Quotient a / b when b divides a exactly; nullopt otherwise.
std::optional<MultiPoly> divide_exact(const MultiPoly& a, const MultiPoly& b);
/// Like divide_exact but throws when the division is not exact.
MultiPoly exact_quotient(const MultiPoly& a, const MultiPoly& b);

/// Canonical greatest common divisor (primitive, positive leading
/// coefficient). Throws if both arguments are zero.
MultiPoly gcd(const MultiPoly& a, const MultiPoly& b);
MultiPoly lcm(const MultiPoly& a, const MultiPoly& b);

/// lc_var(b)^(deg a - deg b + 1) * a mod b, viewed as polynomials in `var`.
MultiPoly pseudo_remainder(const MultiPoly& a, const MultiPoly& b, const std::string& var);

/// gcd of the coefficients of p with respect to `var`.
MultiPoly content_in(const MultiPoly& p, const std::string& var);

/// Integer roots of a polynomial in `var` alone (other variables must not
/// occur), ascending, without multiplicity. The zero polynomial throws.
std::vector<Integer> integer_roots(const MultiPoly& p, const std::string& var);

}  // namespace wzcert
