#pragma once

#include <map>
#include <string>
#include <variant>

#include "wzcert/multipoly.hpp"

namespace wzcert {

/// Quotient of two MultiPolys in lowest terms. The denominator is primitive
/// with a positive graded-lex leading coefficient, so structural equality is
/// equality of functions. Zero is 0/1.
class RatFunc {
 public:
  RatFunc() : num_(), den_(1) {}
  RatFunc(const MultiPoly& p) : num_(p), den_(1) {}  // NOLINT(google-explicit-constructor)
  RatFunc(const Rational& c) : num_(c), den_(1) {}   // NOLINT(google-explicit-constructor)
  RatFunc(long c) : num_(c), den_(1) {}              // NOLINT(google-explicit-constructor)
  RatFunc(int c) : RatFunc(static_cast<long>(c)) {}  // NOLINT(google-explicit-constructor)
  /// Normalizes; throws DivisionByZero when den is zero.
  RatFunc(const MultiPoly& num, const MultiPoly& den);

  const MultiPoly& numerator() const { return num_; }
  const MultiPoly& denominator() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  bool depends_on(const std::string& var) const {
    return num_.depends_on(var) || den_.depends_on(var);
  }

  RatFunc operator-() const;
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  RatFunc& operator+=(const RatFunc& b) { return *this = *this + b; }
  RatFunc& operator-=(const RatFunc& b) { return *this = *this - b; }
  RatFunc& operator*=(const RatFunc& b) { return *this = *this * b; }
  RatFunc& operator/=(const RatFunc& b) { return *this = *this / b; }
  RatFunc pow(int e) const;

  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

  RatFunc substitute(const std::string& var, const MultiPoly& value) const;
  RatFunc shifted(const std::string& var, long h) const;

  /// Full evaluation. Throws PoleError (carrying the point) when the
  /// denominator vanishes.
  Rational evaluate(const Point& point) const;

  std::string to_string() const;
  std::string to_string(const std::vector<std::string>& priority) const;

 private:
  struct Normalized {};
  RatFunc(MultiPoly num, MultiPoly den, Normalized) : num_(std::move(num)), den_(std::move(den)) {}

  MultiPoly num_;
  MultiPoly den_;
};

RatFunc rat_normalize(const MultiPoly& num, const MultiPoly& den);

/// One entry of a specialization: shift the variable by an integer, or
/// replace it by an exact value.
struct Assignment {
  enum class Kind { Shift, Value };
  Kind kind = Kind::Value;
  long shift = 0;
  Rational value;

  static Assignment by_shift(long h) { return {Kind::Shift, h, Rational(0)}; }
  static Assignment by_value(const Rational& v) { return {Kind::Value, 0, v}; }
};

/// Applies shifts/values simultaneously and re-normalizes. Throws PoleError
/// when the denominator vanishes under the assignment.
RatFunc rat_specialize(const RatFunc& r, const std::map<std::string, Assignment>& assignment);

}  // namespace wzcert
