#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "wzcert/multipoly.hpp"
#include "wzcert/ratfunc.hpp"

namespace wzcert {

/// Integer-linear form sum_i c_i * v_i + offset. Variable coefficients are
/// integers; the offset may be any rational.
class LinForm {
 public:
  LinForm() = default;
  LinForm(const Rational& offset) : offset_(offset) {}  // NOLINT(google-explicit-constructor)
  LinForm(long offset) : offset_(offset) {}             // NOLINT(google-explicit-constructor)
  LinForm(int offset) : offset_(offset) {}              // NOLINT(google-explicit-constructor)

  static LinForm variable(const std::string& name, long coefficient = 1);
  /// Degree <= 1 polynomial with integer variable coefficients, else nullopt.
  static std::optional<LinForm> from_poly(const MultiPoly& p);

  const std::map<std::string, long>& coefficients() const { return coeffs_; }
  const Rational& offset() const { return offset_; }
  long coefficient(const std::string& var) const;
  bool depends_on(const std::string& var) const { return coefficient(var) != 0; }
  bool is_constant() const { return coeffs_.empty(); }
  bool has_integer_offset() const { return is_integer(offset_); }
  std::set<std::string> variables() const;

  LinForm operator-() const;
  friend LinForm operator+(const LinForm& a, const LinForm& b);
  friend LinForm operator-(const LinForm& a, const LinForm& b) { return a + (-b); }
  friend LinForm operator*(long c, const LinForm& a);

  /// var -> var + h
  LinForm shifted(const std::string& var, long h) const;
  /// var -> value
  LinForm substituted(const std::string& var, const LinForm& value) const;
  Rational evaluate(const Point& point) const;
  MultiPoly to_poly() const;

  /// Reduces variable coefficients and an integer offset modulo 2.
  LinForm mod2() const;

  friend bool operator==(const LinForm& a, const LinForm& b) {
    return a.coeffs_ == b.coeffs_ && a.offset_ == b.offset_;
  }
  friend bool operator!=(const LinForm& a, const LinForm& b) { return !(a == b); }
  friend bool operator<(const LinForm& a, const LinForm& b);

  /// Difference a - b when it is a constant, else nullopt.
  friend std::optional<Rational> constant_difference(const LinForm& a, const LinForm& b);

  std::string to_string(const std::vector<std::string>& priority = {}) const;

 private:
  void drop_zeros();

  std::map<std::string, long> coeffs_;
  Rational offset_{0};
};

enum class AtomKind { Factorial, Binomial, Pochhammer, Power, Sign, Poly };

/// One factor of a proper-hypergeometric product, raised to a nonzero
/// integer exponent:
///   Factorial   first!                       (first integer-valued)
///   Binomial    binomial(first, second)
///   Pochhammer  (first)_second               (rising factorial)
///   Power       base^first                   (exponent folded into first)
///   Sign        (-1)^first                   (exponent folded into first)
///   Poly        base                         (primitive polynomial)
class HyperAtom {
 public:
  static HyperAtom factorial(const LinForm& arg, int exponent = 1);
  static HyperAtom binomial(const LinForm& top, const LinForm& bottom, int exponent = 1);
  static HyperAtom pochhammer(const LinForm& base, const LinForm& length, int exponent = 1);
  static HyperAtom power(const MultiPoly& base, const LinForm& exponent);
  static HyperAtom sign(const LinForm& exponent);
  /// `p` must be primitive (see MultiPoly::canonical_split).
  static HyperAtom poly(const MultiPoly& p, int exponent = 1);

  AtomKind kind() const { return kind_; }
  const LinForm& first() const { return first_; }
  const LinForm& second() const { return second_; }
  const MultiPoly& base() const { return base_; }
  int exponent() const { return exponent_; }

  HyperAtom with_exponent(int e) const;
  std::set<std::string> variables() const;
  HyperAtom substituted(const std::string& var, const LinForm& value) const;

  /// Identity of the atom ignoring its exponent (Power/Sign: ignoring the
  /// exponent form too), used to merge equal atoms.
  bool same_key(const HyperAtom& other) const;
  friend bool operator<(const HyperAtom& a, const HyperAtom& b);
  friend bool operator==(const HyperAtom& a, const HyperAtom& b);

  std::string to_string(const std::vector<std::string>& priority = {}) const;

 private:
  HyperAtom() = default;

  AtomKind kind_ = AtomKind::Poly;
  LinForm first_;
  LinForm second_;
  MultiPoly base_;
  int exponent_ = 1;
};

/// Rational function kept as a constant times a product of canonical
/// (primitive, positive leading coefficient) polynomial factors with nonzero
/// integer multiplicities.
struct FactoredRatio {
  Rational constant{1};
  std::vector<std::pair<MultiPoly, int>> factors;

  void multiply_factor(const MultiPoly& p, int multiplicity);
  FactoredRatio& operator*=(const FactoredRatio& other);
  FactoredRatio inverse() const;
  FactoredRatio shifted(const std::string& var, long h) const;

  /// constant * product of factors with positive multiplicity.
  MultiPoly numerator() const;
  /// product of factors with negative multiplicity.
  MultiPoly denominator() const;
  RatFunc to_ratfunc() const;
};

/// Proper-hypergeometric term: constant times a canonical product of atoms.
class HyperTerm {
 public:
  HyperTerm() = default;
  HyperTerm(const Rational& constant, std::vector<HyperAtom> atoms = {});  // NOLINT

  const Rational& constant() const { return constant_; }
  const std::vector<HyperAtom>& atoms() const { return atoms_; }
  std::set<std::string> variables() const;
  bool depends_on(const std::string& var) const;
  bool is_zero() const { return constant_ == 0; }

  friend HyperTerm operator*(const HyperTerm& a, const HyperTerm& b);
  friend HyperTerm operator/(const HyperTerm& a, const HyperTerm& b);
  HyperTerm pow(int e) const;

  HyperTerm substituted(const std::string& var, const LinForm& value) const;
  HyperTerm shifted(const std::string& var, long h) const;
  /// Rewrites binomial atoms as factorial quotients.
  HyperTerm expanded() const;

  friend bool operator==(const HyperTerm& a, const HyperTerm& b) {
    return a.constant_ == b.constant_ && a.atoms_ == b.atoms_;
  }

  std::string to_string(const std::vector<std::string>& priority = {}) const;

 private:
  void normalize();

  Rational constant_{1};
  std::vector<HyperAtom> atoms_;
};

/// t(var + 1) / t as a product of factors. Throws NotHypergeometric when an
/// atom's quotient is not rational (e.g. a power whose base depends on var).
FactoredRatio factored_shift_quotient(const HyperTerm& t, const std::string& var);
RatFunc shift_quotient(const HyperTerm& t, const std::string& var);

/// Exact value at a point assigning every variable of t. Reciprocals of
/// poles (1/(-m)!, etc.) are zero; any surviving pole throws PoleError.
Rational eval_exact(const HyperTerm& t, const Point& point);

/// Value at a point that may leave some variables (parameters) free: exact
/// when every variable is assigned, otherwise by substitution when the
/// remaining term is constant (e.g. a parameter power with exponent 0).
/// nullopt when the value still depends on the free variables.
std::optional<Rational> try_eval(const HyperTerm& t, const Point& point);

/// Half-lines on which a term vanishes identically, assuming the remaining
/// free variables are nonnegative integers. Absent sides are unbounded.
struct Support {
  std::optional<LinForm> lower;  // t = 0 for var < lower
  std::optional<LinForm> upper;  // t = 0 for var > upper
  bool finite() const { return lower.has_value() && upper.has_value(); }
};

struct SupportCandidates {
  std::vector<LinForm> lower;
  std::vector<LinForm> upper;
};

/// Every bound implied by an individual atom.
SupportCandidates support_candidates(const HyperTerm& t, const std::string& var);
/// One conservative bound per side (the tightest when candidates are
/// comparable by a constant).
Support natural_support(const HyperTerm& t, const std::string& var);

/// Closed product form of r * t, with the linear factors of r merged into
/// the factorial and Pochhammer atoms of t wherever they match (so that,
/// e.g., k/k! becomes 1/(k-1)!). Unmatched factors remain polynomial atoms.
HyperTerm absorb(const HyperTerm& t, const RatFunc& r);

/// t as a rational function of its variables when every gamma-type atom
/// pairs with another one at an integer distance; nullopt otherwise.
std::optional<RatFunc> as_rational(const HyperTerm& t);

/// Summation clause of an identity.
struct SumRange {
  std::string var;
  std::optional<LinForm> lo;  // explicit range when both are set
  std::optional<LinForm> hi;
  bool explicit_range() const { return lo.has_value() && hi.has_value(); }
};

/// sum_{vars} summand = rhs_1 + ... + rhs_m in the main variable.
struct Identity {
  HyperTerm summand;
  std::vector<HyperTerm> rhs;
  std::vector<SumRange> sums;
  std::string main_var = "n";
  std::vector<std::string> params;

  std::vector<std::string> sum_vars() const;
  /// Display priority: main variable, summation variables, parameters.
  std::vector<std::string> display_order() const;
};

/// Divides the summand by the (single-term) right-hand side so that the
/// right-hand side becomes 1.
Identity divide_by_rhs(const Identity& id);

}  // namespace wzcert
