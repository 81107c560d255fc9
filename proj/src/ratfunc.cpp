#include "wzcert/ratfunc.hpp"

#include "wzcert/errors.hpp"

namespace wzcert {

RatFunc::RatFunc(const MultiPoly& num, const MultiPoly& den) {
  if (den.is_zero()) throw DivisionByZero("rational function with zero denominator");
  if (num.is_zero()) {
    num_ = MultiPoly();
    den_ = MultiPoly(1);
    return;
  }
  MultiPoly n = num;
  MultiPoly d = den;
  if (!d.is_constant()) {
    MultiPoly g = gcd(n, d);
    if (!g.is_constant()) {
      n = exact_quotient(n, g);
      d = exact_quotient(d, g);
    }
  }
  auto [unit, prim] = d.canonical_split();
  num_ = n * Rational(1 / unit);
  den_ = std::move(prim);
}

RatFunc rat_normalize(const MultiPoly& num, const MultiPoly& den) { return RatFunc(num, den); }

RatFunc RatFunc::operator-() const { return RatFunc(-num_, den_, Normalized{}); }

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
  if (a.den_.is_constant() && b.den_.is_constant()) {
    return RatFunc(a.num_ + b.num_, MultiPoly(1));
  }
  MultiPoly g = gcd(a.den_, b.den_);
  MultiPoly da = exact_quotient(a.den_, g);
  MultiPoly db = exact_quotient(b.den_, g);
  return RatFunc(a.num_ * db + b.num_ * da, da * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero() || b.is_zero()) return RatFunc();
  // Cross-cancel first so the products stay small.
  MultiPoly g1 = a.den_.is_constant() || b.num_.is_constant() ? MultiPoly(1) : gcd(b.num_, a.den_);
  MultiPoly g2 = b.den_.is_constant() || a.num_.is_constant() ? MultiPoly(1) : gcd(a.num_, b.den_);
  MultiPoly n = exact_quotient(a.num_, g2) * exact_quotient(b.num_, g1);
  MultiPoly d = exact_quotient(a.den_, g1) * exact_quotient(b.den_, g2);
  auto [unit, prim] = d.canonical_split();
  return RatFunc(n * Rational(1 / unit), prim, RatFunc::Normalized{});
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.is_zero()) throw DivisionByZero("division by zero rational function");
  return a * RatFunc(b.den_, b.num_);
}

RatFunc RatFunc::pow(int e) const {
  if (e < 0) {
    if (is_zero()) throw DivisionByZero("zero rational function to a negative power");
    return RatFunc(den_, num_).pow(-e);
  }
  return RatFunc(num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)),
                 Normalized{});
}

RatFunc RatFunc::substitute(const std::string& var, const MultiPoly& value) const {
  return RatFunc(num_.substitute(var, value), den_.substitute(var, value));
}

RatFunc RatFunc::shifted(const std::string& var, long h) const {
  if (h == 0) return *this;
  // A shift preserves coprimality; only the denominator's unit can change.
  MultiPoly n = num_.shifted(var, h);
  auto [unit, prim] = den_.shifted(var, h).canonical_split();
  return RatFunc(n * Rational(1 / unit), prim, Normalized{});
}

Rational RatFunc::evaluate(const Point& point) const {
  Rational d = den_.evaluate(point);
  if (d == 0) throw PoleError("pole of " + to_string(), point);
  return num_.evaluate(point) / d;
}

std::string RatFunc::to_string() const { return to_string({}); }

std::string RatFunc::to_string(const std::vector<std::string>& priority) const {
  if (den_ == MultiPoly(1)) return num_.to_string(priority);
  return "(" + num_.to_string(priority) + ")/(" + den_.to_string(priority) + ")";
}

RatFunc rat_specialize(const RatFunc& r, const std::map<std::string, Assignment>& assignment) {
  // A shift mentions only its own variable, so applying them in turn is simultaneous.
  MultiPoly num = r.numerator();
  MultiPoly den = r.denominator();
  Point values;
  for (const auto& [var, a] : assignment) {
    if (a.kind == Assignment::Kind::Shift) {
      MultiPoly target = MultiPoly::variable(var) + MultiPoly(a.shift);
      num = num.substitute(var, target);
      den = den.substitute(var, target);
    } else {
      values[var] = a.value;
    }
  }
  num = num.partial_evaluate(values);
  den = den.partial_evaluate(values);
  if (den.is_zero()) {
    Point where = values;
    throw PoleError("denominator " + r.denominator().to_string() + " vanishes under specialization",
                    where);
  }
  return RatFunc(num, den);
}

}  // namespace wzcert
