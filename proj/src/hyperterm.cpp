#include "wzcert/hyperterm.hpp"

#include <algorithm>
#include <sstream>

#include "wzcert/errors.hpp"

namespace wzcert {

// ---------------------------------------------------------------- LinForm

LinForm LinForm::variable(const std::string& name, long coefficient) {
  LinForm f;
  if (coefficient != 0) f.coeffs_[name] = coefficient;
  return f;
}

std::optional<LinForm> LinForm::from_poly(const MultiPoly& p) {
  if (p.total_degree() > 1) return std::nullopt;
  LinForm f;
  const auto& vars = p.variables();
  for (const auto& [e, c] : p.terms()) {
    auto it = std::find(e.begin(), e.end(), 1);
    if (it == e.end()) {
      f.offset_ = c;
      continue;
    }
    if (!is_integer(c)) return std::nullopt;
    f.coeffs_[vars[static_cast<std::size_t>(it - e.begin())]] = to_long(c);
  }
  return f;
}

long LinForm::coefficient(const std::string& var) const {
  auto it = coeffs_.find(var);
  return it == coeffs_.end() ? 0 : it->second;
}

std::set<std::string> LinForm::variables() const {
  std::set<std::string> out;
  for (const auto& [v, c] : coeffs_) out.insert(v);
  return out;
}

void LinForm::drop_zeros() {
  for (auto it = coeffs_.begin(); it != coeffs_.end();) {
    it = it->second == 0 ? coeffs_.erase(it) : std::next(it);
  }
}

LinForm LinForm::operator-() const {
  LinForm f = *this;
  for (auto& [v, c] : f.coeffs_) c = -c;
  f.offset_ = -f.offset_;
  return f;
}

LinForm operator+(const LinForm& a, const LinForm& b) {
  LinForm f = a;
  for (const auto& [v, c] : b.coeffs_) f.coeffs_[v] += c;
  f.offset_ += b.offset_;
  f.drop_zeros();
  return f;
}

LinForm operator*(long c, const LinForm& a) {
  LinForm f = a;
  for (auto& [v, x] : f.coeffs_) x *= c;
  f.offset_ *= c;
  f.drop_zeros();
  return f;
}

LinForm LinForm::shifted(const std::string& var, long h) const {
  LinForm f = *this;
  f.offset_ += Rational(coefficient(var) * h);
  return f;
}

LinForm LinForm::substituted(const std::string& var, const LinForm& value) const {
  long c = coefficient(var);
  if (c == 0) return *this;
  LinForm f = *this;
  f.coeffs_.erase(var);
  return f + c * value;
}

Rational LinForm::evaluate(const Point& point) const {
  Rational v = offset_;
  for (const auto& [var, c] : coeffs_) {
    auto it = point.find(var);
    if (it == point.end()) throw Error("no value for variable " + var);
    v += c * it->second;
  }
  return v;
}

MultiPoly LinForm::to_poly() const {
  MultiPoly p(offset_);
  for (const auto& [var, c] : coeffs_) p += MultiPoly(c) * MultiPoly::variable(var);
  return p;
}

LinForm LinForm::mod2() const {
  LinForm f;
  for (const auto& [v, c] : coeffs_) {
    long r = ((c % 2) + 2) % 2;
    if (r != 0) f.coeffs_[v] = r;
  }
  if (is_integer(offset_)) {
    Integer r = offset_.get_num() % 2;
    if (r < 0) r += 2;
    f.offset_ = Rational(r);
  } else {
    f.offset_ = offset_;
  }
  return f;
}

bool operator<(const LinForm& a, const LinForm& b) {
  if (a.coeffs_ != b.coeffs_) return a.coeffs_ < b.coeffs_;
  return a.offset_ < b.offset_;
}

std::optional<Rational> constant_difference(const LinForm& a, const LinForm& b) {
  if (a.coeffs_ != b.coeffs_) return std::nullopt;
  return a.offset_ - b.offset_;
}

std::string LinForm::to_string(const std::vector<std::string>& priority) const {
  std::vector<std::string> order;
  for (const auto& p : priority) {
    if (coeffs_.count(p) != 0U && std::find(order.begin(), order.end(), p) == order.end()) {
      order.push_back(p);
    }
  }
  for (const auto& [v, c] : coeffs_) {
    if (std::find(order.begin(), order.end(), v) == order.end()) order.push_back(v);
  }
  std::ostringstream os;
  bool first = true;
  for (const auto& v : order) {
    long c = coeffs_.at(v);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    long mag = c < 0 ? -c : c;
    if (mag != 1) os << mag << "*";
    os << v;
  }
  if (first) {
    os << wzcert::to_string(offset_);
  } else if (offset_ != 0) {
    os << (offset_ < 0 ? " - " : " + ") << wzcert::to_string(abs(offset_));
  }
  return os.str();
}

// ---------------------------------------------------------------- HyperAtom

HyperAtom HyperAtom::factorial(const LinForm& arg, int exponent) {
  if (!arg.has_integer_offset()) throw NotHypergeometric("factorial of a non-integer-valued form");
  HyperAtom a;
  a.kind_ = AtomKind::Factorial;
  a.first_ = arg;
  a.exponent_ = exponent;
  return a;
}

HyperAtom HyperAtom::binomial(const LinForm& top, const LinForm& bottom, int exponent) {
  if (!top.has_integer_offset() || !bottom.has_integer_offset()) {
    throw NotHypergeometric("binomial of a non-integer-valued form");
  }
  HyperAtom a;
  a.kind_ = AtomKind::Binomial;
  a.first_ = top;
  a.second_ = bottom;
  a.exponent_ = exponent;
  return a;
}

HyperAtom HyperAtom::pochhammer(const LinForm& base, const LinForm& length, int exponent) {
  if (!length.has_integer_offset()) {
    throw NotHypergeometric("Pochhammer length must be integer-valued");
  }
  HyperAtom a;
  a.kind_ = AtomKind::Pochhammer;
  a.first_ = base;
  a.second_ = length;
  a.exponent_ = exponent;
  return a;
}

HyperAtom HyperAtom::power(const MultiPoly& base, const LinForm& exponent) {
  if (base.is_zero()) throw Error("power of zero with a symbolic exponent");
  HyperAtom a;
  a.kind_ = AtomKind::Power;
  a.base_ = base;
  a.first_ = exponent;
  return a;
}

HyperAtom HyperAtom::sign(const LinForm& exponent) {
  HyperAtom a;
  a.kind_ = AtomKind::Sign;
  a.first_ = exponent;
  return a;
}

HyperAtom HyperAtom::poly(const MultiPoly& p, int exponent) {
  HyperAtom a;
  a.kind_ = AtomKind::Poly;
  a.base_ = p;
  a.exponent_ = exponent;
  return a;
}

HyperAtom HyperAtom::with_exponent(int e) const {
  HyperAtom a = *this;
  a.exponent_ = e;
  return a;
}

std::set<std::string> HyperAtom::variables() const {
  std::set<std::string> out = first_.variables();
  for (const auto& v : second_.variables()) out.insert(v);
  for (const auto& v : base_.occurring_variables()) out.insert(v);
  return out;
}

HyperAtom HyperAtom::substituted(const std::string& var, const LinForm& value) const {
  HyperAtom a = *this;
  a.first_ = first_.substituted(var, value);
  a.second_ = second_.substituted(var, value);
  if (base_.depends_on(var)) a.base_ = base_.substitute(var, value.to_poly());
  return a;
}

bool HyperAtom::same_key(const HyperAtom& other) const {
  if (kind_ != other.kind_) return false;
  switch (kind_) {
    case AtomKind::Factorial:
      return first_ == other.first_;
    case AtomKind::Binomial:
    case AtomKind::Pochhammer:
      return first_ == other.first_ && second_ == other.second_;
    case AtomKind::Power:
    case AtomKind::Poly:
      return base_ == other.base_;
    case AtomKind::Sign:
      return true;
  }
  return false;
}

bool operator<(const HyperAtom& a, const HyperAtom& b) {
  if (a.kind_ != b.kind_) return a.kind_ < b.kind_;
  if (a.base_ != b.base_) return a.base_ < b.base_;
  if (a.first_ != b.first_) return a.first_ < b.first_;
  if (a.second_ != b.second_) return a.second_ < b.second_;
  return a.exponent_ < b.exponent_;
}

bool operator==(const HyperAtom& a, const HyperAtom& b) {
  return a.kind_ == b.kind_ && a.first_ == b.first_ && a.second_ == b.second_ &&
         a.base_ == b.base_ && a.exponent_ == b.exponent_;
}

namespace {

bool needs_parens(const LinForm& f) {
  std::size_t pieces = f.coefficients().size() + (f.offset() != 0 ? 1 : 0);
  if (pieces > 1) return true;
  if (f.is_constant()) return f.offset() < 0 || !is_integer(f.offset());
  long c = f.coefficients().begin()->second;
  return c != 1;
}

std::string power_base_string(const MultiPoly& base, const std::vector<std::string>& priority) {
  if (base.is_constant()) {
    Rational c = base.constant_value();
    if (c < 0 || !is_integer(c)) return "(" + to_string(c) + ")";
    return to_string(c);
  }
  if (base.size() == 1 && base.leading_coefficient() == 1 && base.total_degree() == 1) {
    return base.to_string(priority);
  }
  return "(" + base.to_string(priority) + ")";
}

}  // namespace

std::string HyperAtom::to_string(const std::vector<std::string>& priority) const {
  std::string body;
  int e = exponent_;
  switch (kind_) {
    case AtomKind::Factorial:
      body = "factorial(" + first_.to_string(priority) + ")";
      break;
    case AtomKind::Binomial:
      body = "binomial(" + first_.to_string(priority) + ", " + second_.to_string(priority) + ")";
      break;
    case AtomKind::Pochhammer:
      body = "poch(" + first_.to_string(priority) + ", " + second_.to_string(priority) + ")";
      break;
    case AtomKind::Power: {
      std::string ex = first_.to_string(priority);
      return power_base_string(base_, priority) + "^" + (needs_parens(first_) ? "(" + ex + ")" : ex);
    }
    case AtomKind::Sign: {
      std::string ex = first_.to_string(priority);
      return "(-1)^" + (needs_parens(first_) ? "(" + ex + ")" : ex);
    }
    case AtomKind::Poly:
      body = base_.size() == 1 && base_.total_degree() == 1 && base_.leading_coefficient() == 1
                 ? base_.to_string(priority)
                 : "(" + base_.to_string(priority) + ")";
      break;
  }
  if (e != 1) body += "^" + (e < 0 ? "(" + std::to_string(e) + ")" : std::to_string(e));
  return body;
}

// ---------------------------------------------------------------- FactoredRatio

void FactoredRatio::multiply_factor(const MultiPoly& p, int multiplicity) {
  if (multiplicity == 0) return;
  if (p.is_constant()) {
    Rational c = p.constant_value();
    if (c == 0) throw NotHypergeometric("shift quotient vanishes identically");
    constant *= power(c, multiplicity);
    return;
  }
  auto [unit, prim] = p.canonical_split();
  constant *= power(unit, multiplicity);
  for (auto it = factors.begin(); it != factors.end(); ++it) {
    if (it->first == prim) {
      it->second += multiplicity;
      if (it->second == 0) factors.erase(it);
      return;
    }
  }
  auto pos = std::lower_bound(factors.begin(), factors.end(), prim,
                              [](const auto& entry, const MultiPoly& q) { return entry.first < q; });
  factors.insert(pos, {prim, multiplicity});
}

FactoredRatio& FactoredRatio::operator*=(const FactoredRatio& other) {
  constant *= other.constant;
  for (const auto& [f, m] : other.factors) multiply_factor(f, m);
  return *this;
}

FactoredRatio FactoredRatio::inverse() const {
  FactoredRatio out;
  out.constant = 1 / constant;
  out.factors = factors;
  for (auto& f : out.factors) f.second = -f.second;
  return out;
}

FactoredRatio FactoredRatio::shifted(const std::string& var, long h) const {
  FactoredRatio out;
  out.constant = constant;
  for (const auto& [f, m] : factors) out.multiply_factor(f.shifted(var, h), m);
  return out;
}

MultiPoly FactoredRatio::numerator() const {
  MultiPoly p(constant);
  for (const auto& [f, m] : factors) {
    if (m > 0) p *= f.pow(static_cast<unsigned>(m));
  }
  return p;
}

MultiPoly FactoredRatio::denominator() const {
  MultiPoly p(1);
  for (const auto& [f, m] : factors) {
    if (m < 0) p *= f.pow(static_cast<unsigned>(-m));
  }
  return p;
}

RatFunc FactoredRatio::to_ratfunc() const { return RatFunc(numerator(), denominator()); }

// ---------------------------------------------------------------- HyperTerm

namespace {

Rational factorial_value(const Rational& v, int e) {
  if (!is_integer(v)) throw NotHypergeometric("factorial of non-integer " + to_string(v));
  long m = to_long(v);
  if (m < 0) {
    if (e < 0) return 0;
    throw PoleError("factorial of negative integer " + std::to_string(m), {});
  }
  return power(Rational(factorial(m)), e);
}

/// Rising factorial (b)_m for integer m, or nullopt at a pole.
std::optional<Rational> rising_value(const Rational& b, long m) {
  Rational v = 1;
  if (m >= 0) {
    for (long i = 0; i < m; ++i) v *= b + i;
    return v;
  }
  for (long i = 1; i <= -m; ++i) v *= b - i;
  if (v == 0) return std::nullopt;
  return 1 / v;
}

}  // namespace

HyperTerm::HyperTerm(const Rational& constant, std::vector<HyperAtom> atoms)
    : constant_(constant), atoms_(std::move(atoms)) {
  normalize();
}

void HyperTerm::normalize() {
  std::vector<HyperAtom> work;
  for (const auto& a : atoms_) {
    switch (a.kind()) {
      case AtomKind::Factorial:
        if (a.first().is_constant()) {
          constant_ *= factorial_value(a.first().offset(), a.exponent());
          continue;
        }
        break;
      case AtomKind::Binomial:
        if (a.first().is_constant() && a.second().is_constant()) {
          Integer v = binomial(to_long(a.first().offset()), to_long(a.second().offset()));
          if (v == 0 && a.exponent() < 0) throw PoleError("reciprocal of a vanishing binomial", {});
          constant_ *= power(Rational(v), a.exponent());
          continue;
        }
        break;
      case AtomKind::Pochhammer:
        if (a.second().is_constant()) {
          auto v = rising_value(a.first().offset(), to_long(a.second().offset()));
          if (a.first().is_constant()) {
            if (!v) throw PoleError("Pochhammer symbol at a pole", {});
            constant_ *= power(*v, a.exponent());
            continue;
          }
          // (B)_m with constant m is a polynomial in B.
          long m = to_long(a.second().offset());
          for (long i = 0; i < (m >= 0 ? m : -m); ++i) {
            MultiPoly f = m >= 0 ? a.first().to_poly() + MultiPoly(i)
                                 : a.first().to_poly() - MultiPoly(i + 1);
            auto [unit, prim] = f.canonical_split();
            int e = m >= 0 ? a.exponent() : -a.exponent();
            constant_ *= power(unit, e);
            work.push_back(HyperAtom::poly(prim, e));
          }
          continue;
        }
        break;
      case AtomKind::Power: {
        auto [unit, prim] = a.base().canonical_split();
        const LinForm& ex = a.first();
        if (ex.is_constant()) {
          if (!ex.has_integer_offset()) throw Error("non-integer constant power is irrational");
          long e = to_long(ex.offset());
          constant_ *= power(a.base().is_constant() ? a.base().constant_value() : unit,
                             static_cast<int>(e));
          if (!a.base().is_constant() && e != 0) {
            work.push_back(HyperAtom::poly(prim, static_cast<int>(e)));
          }
          continue;
        }
        Rational u = a.base().is_constant() ? a.base().constant_value() : unit;
        if (u < 0) {
          work.push_back(HyperAtom::sign(ex));
          u = -u;
        }
        if (u != 1) work.push_back(HyperAtom::power(MultiPoly(u), ex));
        if (!a.base().is_constant()) work.push_back(HyperAtom::power(prim, ex));
        continue;
      }
      case AtomKind::Sign:
        if (a.first().is_constant()) {
          if (!a.first().has_integer_offset()) throw Error("non-integer power of -1");
          if (a.first().mod2().offset() != 0) constant_ = -constant_;
          continue;
        }
        break;
      case AtomKind::Poly:
        if (a.base().is_constant()) {
          constant_ *= power(a.base().constant_value(), a.exponent());
          continue;
        }
        {
          auto [unit, prim] = a.base().canonical_split();
          if (unit != 1) {
            constant_ *= power(unit, a.exponent());
            work.push_back(HyperAtom::poly(prim, a.exponent()));
            continue;
          }
        }
        break;
    }
    work.push_back(a);
  }
  if (constant_ == 0) {
    atoms_.clear();
    return;
  }

  std::sort(work.begin(), work.end());
  std::vector<HyperAtom> merged;
  for (const auto& a : work) {
    if (!merged.empty() && merged.back().same_key(a)) {
      HyperAtom& m = merged.back();
      if (a.kind() == AtomKind::Power) {
        m = HyperAtom::power(m.base(), m.first() + a.first());
      } else if (a.kind() == AtomKind::Sign) {
        m = HyperAtom::sign(m.first() + a.first());
      } else {
        m = m.with_exponent(m.exponent() + a.exponent());
      }
      continue;
    }
    merged.push_back(a);
  }
  atoms_.clear();
  for (auto& a : merged) {
    if (a.kind() == AtomKind::Sign) a = HyperAtom::sign(a.first().mod2());
    bool trivial = (a.kind() == AtomKind::Power || a.kind() == AtomKind::Sign)
                       ? a.first().is_constant() && a.first().offset() == 0
                       : a.exponent() == 0;
    if (a.kind() == AtomKind::Sign && a.first().is_constant()) {
      if (a.first().offset() != 0) constant_ = -constant_;
      continue;
    }
    if (a.kind() == AtomKind::Power && a.first().is_constant() && !trivial) {
      // Merged exponents cancelled down to a constant.
      std::vector<HyperAtom> one{a};
      HyperTerm folded(1, one);
      constant_ *= folded.constant_;
      for (const auto& b : folded.atoms_) atoms_.push_back(b);
      continue;
    }
    if (!trivial) atoms_.push_back(a);
  }
  std::sort(atoms_.begin(), atoms_.end());
}

std::set<std::string> HyperTerm::variables() const {
  std::set<std::string> out;
  for (const auto& a : atoms_) {
    for (const auto& v : a.variables()) out.insert(v);
  }
  return out;
}

bool HyperTerm::depends_on(const std::string& var) const { return variables().count(var) != 0U; }

HyperTerm operator*(const HyperTerm& a, const HyperTerm& b) {
  std::vector<HyperAtom> atoms = a.atoms_;
  atoms.insert(atoms.end(), b.atoms_.begin(), b.atoms_.end());
  return HyperTerm(a.constant_ * b.constant_, atoms);
}

HyperTerm operator/(const HyperTerm& a, const HyperTerm& b) { return a * b.pow(-1); }

HyperTerm HyperTerm::pow(int e) const {
  if (e < 0 && constant_ == 0) throw DivisionByZero("zero term to a negative power");
  std::vector<HyperAtom> atoms;
  for (const auto& a : atoms_) {
    if (a.kind() == AtomKind::Power) {
      atoms.push_back(HyperAtom::power(a.base(), static_cast<long>(e) * a.first()));
    } else if (a.kind() == AtomKind::Sign) {
      atoms.push_back(HyperAtom::sign(static_cast<long>(e) * a.first()));
    } else {
      atoms.push_back(a.with_exponent(a.exponent() * e));
    }
  }
  return HyperTerm(power(constant_, e), atoms);
}

HyperTerm HyperTerm::substituted(const std::string& var, const LinForm& value) const {
  std::vector<HyperAtom> atoms;
  for (const auto& a : atoms_) atoms.push_back(a.substituted(var, value));
  return HyperTerm(constant_, atoms);
}

HyperTerm HyperTerm::shifted(const std::string& var, long h) const {
  return substituted(var, LinForm::variable(var) + LinForm(h));
}

HyperTerm HyperTerm::expanded() const {
  std::vector<HyperAtom> atoms;
  for (const auto& a : atoms_) {
    if (a.kind() != AtomKind::Binomial) {
      atoms.push_back(a);
      continue;
    }
    int e = a.exponent();
    atoms.push_back(HyperAtom::factorial(a.first(), e));
    atoms.push_back(HyperAtom::factorial(a.second(), -e));
    atoms.push_back(HyperAtom::factorial(a.first() - a.second(), -e));
  }
  return HyperTerm(constant_, atoms);
}

namespace {

bool power_in_denominator(const LinForm& ex) {
  if (ex.offset() > 0) return false;
  bool any_negative = ex.offset() < 0;
  for (const auto& [v, c] : ex.coefficients()) {
    if (c > 0) return false;
    any_negative = true;
  }
  return any_negative;
}

}  // namespace

std::string HyperTerm::to_string(const std::vector<std::string>& priority) const {
  std::vector<std::string> num;
  std::vector<std::string> den;
  Rational mag = abs(constant_);
  if (mag.get_num() != 1) num.push_back(wzcert::to_string(mag.get_num()));
  if (mag.get_den() != 1) den.push_back(wzcert::to_string(mag.get_den()));
  for (const auto& a : atoms_) {
    if (a.kind() == AtomKind::Power || a.kind() == AtomKind::Sign) {
      if (a.kind() == AtomKind::Power && power_in_denominator(a.first())) {
        den.push_back(HyperAtom::power(a.base(), -a.first()).to_string(priority));
      } else {
        num.push_back(a.to_string(priority));
      }
      continue;
    }
    if (a.exponent() > 0) {
      num.push_back(a.to_string(priority));
    } else {
      den.push_back(a.with_exponent(-a.exponent()).to_string(priority));
    }
  }
  std::string out = constant_ < 0 ? "-" : "";
  if (num.empty()) {
    out += "1";
  } else {
    for (std::size_t i = 0; i < num.size(); ++i) out += (i ? "*" : "") + num[i];
  }
  if (!den.empty()) {
    out += "/";
    if (den.size() > 1) out += "(";
    for (std::size_t i = 0; i < den.size(); ++i) out += (i ? "*" : "") + den[i];
    if (den.size() > 1) out += ")";
  }
  return out;
}

// ---------------------------------------------------------------- quotients

namespace {

/// Gamma(X + m) / Gamma(X), i.e. the rising factorial (X)_m for integer m.
void multiply_rising(FactoredRatio& r, const LinForm& x, long m, int e) {
  if (m >= 0) {
    for (long i = 0; i < m; ++i) r.multiply_factor((x + LinForm(i)).to_poly(), e);
  } else {
    for (long i = 1; i <= -m; ++i) r.multiply_factor((x - LinForm(i)).to_poly(), -e);
  }
}

}  // namespace

FactoredRatio factored_shift_quotient(const HyperTerm& t, const std::string& var) {
  FactoredRatio r;
  const HyperTerm expanded_term = t.expanded();
  for (const auto& a : expanded_term.atoms()) {
    switch (a.kind()) {
      case AtomKind::Factorial: {
        long c = a.first().coefficient(var);
        multiply_rising(r, a.first() + LinForm(1), c, a.exponent());
        break;
      }
      case AtomKind::Binomial:
        throw Error("unexpanded binomial");
      case AtomKind::Pochhammer: {
        long beta = a.first().coefficient(var);
        long lambda = a.second().coefficient(var);
        multiply_rising(r, a.first() + a.second(), beta + lambda, a.exponent());
        multiply_rising(r, a.first(), beta, -a.exponent());
        break;
      }
      case AtomKind::Power: {
        if (a.base().depends_on(var)) {
          throw NotHypergeometric("power base " + a.base().to_string() + " depends on " + var);
        }
        long c = a.first().coefficient(var);
        if (c != 0) r.multiply_factor(a.base(), static_cast<int>(c));
        break;
      }
      case AtomKind::Sign:
        if (a.first().coefficient(var) % 2 != 0) r.constant = -r.constant;
        break;
      case AtomKind::Poly:
        if (a.base().depends_on(var)) {
          r.multiply_factor(a.base().shifted(var, 1), a.exponent());
          r.multiply_factor(a.base(), -a.exponent());
        }
        break;
    }
  }
  return r;
}

RatFunc shift_quotient(const HyperTerm& t, const std::string& var) {
  return factored_shift_quotient(t, var).to_ratfunc();
}

// ---------------------------------------------------------------- evaluation

Rational eval_exact(const HyperTerm& t, const Point& point) {
  if (t.constant() == 0) return 0;
  Rational value = t.constant();
  int zeros = 0;
  auto pole = [&point](const std::string& what) { return PoleError(what, point); };
  for (const auto& a : t.atoms()) {
    int e = a.exponent();
    switch (a.kind()) {
      case AtomKind::Factorial: {
        Rational v = a.first().evaluate(point);
        if (!is_integer(v)) throw NotHypergeometric("factorial of non-integer " + to_string(v));
        if (v < 0) {
          if (e > 0) throw pole("factorial(" + a.first().to_string() + ") at a negative integer");
          ++zeros;
        } else {
          value *= power(Rational(factorial(to_long(v))), e);
        }
        break;
      }
      case AtomKind::Binomial: {
        // binomial(a, b) is zero outside 0 <= b <= a
        Rational top = a.first().evaluate(point);
        Rational bottom = a.second().evaluate(point);
        if (!is_integer(top) || !is_integer(bottom)) throw NotHypergeometric("binomial of non-integers");
        Integer v = binomial(to_long(top), to_long(bottom));
        if (v == 0) {
          if (e < 0) throw pole("binomial(" + a.first().to_string() + ", " + a.second().to_string() + ") vanishes");
          ++zeros;
        } else {
          value *= power(Rational(v), e);
        }
        break;
      }
      case AtomKind::Pochhammer: {
        Rational b = a.first().evaluate(point);
        Rational m = a.second().evaluate(point);
        if (!is_integer(m)) throw NotHypergeometric("Pochhammer length is not an integer");
        long len = to_long(m);
        Rational prod = 1;
        for (long i = 0; i < (len >= 0 ? len : -len); ++i) prod *= len >= 0 ? Rational(b + i) : Rational(b - (i + 1));
        bool inverted = len < 0;
        int effective = inverted ? -e : e;
        if (prod == 0) {
          if (effective < 0) throw pole("Pochhammer symbol at a pole");
          ++zeros;
        } else {
          value *= power(prod, effective);
        }
        break;
      }
      case AtomKind::Power: {
        Rational b = a.base().evaluate(point);
        Rational ex = a.first().evaluate(point);
        if (!is_integer(ex)) throw Error("power with non-integer exponent " + to_string(ex));
        long x = to_long(ex);
        if (b == 0) {
          if (x < 0) throw pole("zero base to a negative power");
          if (x > 0) ++zeros;
        } else {
          value *= power(b, x);
        }
        break;
      }
      case AtomKind::Sign: {
        Rational ex = a.first().evaluate(point);
        if (!is_integer(ex)) throw Error("(-1) to a non-integer power");
        if (ex.get_num() % 2 != 0) value = -value;
        break;
      }
      case AtomKind::Poly: {
        Rational v = a.base().evaluate(point);
        if (v == 0) {
          if (e < 0) throw pole("polynomial factor " + a.base().to_string() + " vanishes");
          ++zeros;
        } else {
          value *= power(v, e);
        }
        break;
      }
    }
  }
  return zeros > 0 ? Rational(0) : value;
}

std::optional<Rational> try_eval(const HyperTerm& t, const Point& point) {
  auto vars = t.variables();
  if (std::all_of(vars.begin(), vars.end(), [&](const std::string& v) { return point.count(v) != 0U; })) {
    return eval_exact(t, point);
  }
  HyperTerm s = t;
  try {
    for (const auto& [v, value] : point) {
      if (!is_integer(value)) return std::nullopt;
      if (s.depends_on(v)) s = s.substituted(v, LinForm(value));
    }
  } catch (const PoleError& e) {
    throw PoleError(e.what(), point);
  }
  if (!s.variables().empty()) return std::nullopt;
  return s.constant();
}

// ---------------------------------------------------------------- support

SupportCandidates support_candidates(const HyperTerm& t, const std::string& var) {
  SupportCandidates out;
  auto add = [](std::vector<LinForm>& list, const LinForm& f) {
    if (std::find(list.begin(), list.end(), f) == list.end()) list.push_back(f);
  };
  const HyperTerm expanded_term = t.expanded();
  for (const auto& a : expanded_term.atoms()) {
    if (a.kind() == AtomKind::Factorial && a.exponent() < 0) {
      // 1/L! vanishes for L < 0.
      long c = a.first().coefficient(var);
      LinForm rest = a.first().substituted(var, LinForm(0));
      if (c == 1) add(out.lower, -rest);
      if (c == -1) add(out.upper, rest);
    } else if (a.kind() == AtomKind::Pochhammer && a.exponent() > 0) {
      // (B)_L with B a nonpositive integer vanishes once L > -B.
      const LinForm& base = a.first();
      if (base.depends_on(var) || !base.has_integer_offset() || base.offset() > 0) continue;
      bool nonpositive = std::all_of(base.coefficients().begin(), base.coefficients().end(),
                                     [](const auto& vc) { return vc.second < 0; });
      if (!nonpositive) continue;
      long c = a.second().coefficient(var);
      LinForm rest = a.second().substituted(var, LinForm(0));
      if (c == 1) add(out.upper, -base - rest);
      if (c == -1) add(out.lower, rest + base);
    }
  }
  return out;
}

Support natural_support(const HyperTerm& t, const std::string& var) {
  SupportCandidates c = support_candidates(t, var);
  Support s;
  for (const auto& f : c.lower) {
    if (!s.lower) {
      s.lower = f;
      continue;
    }
    auto d = constant_difference(f, *s.lower);
    if (d && *d > 0) s.lower = f;
  }
  for (const auto& f : c.upper) {
    if (!s.upper) {
      s.upper = f;
      continue;
    }
    auto d = constant_difference(f, *s.upper);
    if (d && *d < 0) s.upper = f;
  }
  return s;
}

// ---------------------------------------------------------------- absorb

namespace {

/// Divides `p` by the polynomial of `f` if possible (f non-constant).
bool try_take(MultiPoly& p, const LinForm& f) {
  if (f.is_constant() || p.is_constant()) return false;
  auto q = divide_exact(p, f.to_poly());
  if (!q) return false;
  p = std::move(*q);
  return true;
}

}  // namespace

HyperTerm absorb(const HyperTerm& t, const RatFunc& r) {
  if (r.is_zero()) return HyperTerm(0);
  MultiPoly num = r.numerator();
  MultiPoly den = r.denominator();
  HyperTerm ex = t.expanded();
  std::vector<HyperAtom> units;
  for (const auto& a : ex.atoms()) {
    bool splittable = a.kind() == AtomKind::Factorial || a.kind() == AtomKind::Pochhammer ||
                      a.kind() == AtomKind::Poly;
    if (!splittable) {
      units.push_back(a);
      continue;
    }
    int e = a.exponent();
    for (int i = 0; i < (e > 0 ? e : -e); ++i) units.push_back(a.with_exponent(e > 0 ? 1 : -1));
  }

  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& a : units) {
      if (a.kind() == AtomKind::Factorial) {
        const LinForm& x = a.first();
        if (a.exponent() < 0) {
          if (try_take(num, x)) {  // x / x! = 1/(x-1)!
            a = HyperAtom::factorial(x - LinForm(1), -1);
            changed = true;
          } else if (try_take(den, x + LinForm(1))) {  // 1/((x+1) x!) = 1/(x+1)!
            a = HyperAtom::factorial(x + LinForm(1), -1);
            changed = true;
          }
        } else {
          if (try_take(den, x)) {  // x!/x = (x-1)!
            a = HyperAtom::factorial(x - LinForm(1), 1);
            changed = true;
          } else if (try_take(num, x + LinForm(1))) {  // (x+1) x! = (x+1)!
            a = HyperAtom::factorial(x + LinForm(1), 1);
            changed = true;
          }
        }
      } else if (a.kind() == AtomKind::Pochhammer) {
        const LinForm& b = a.first();
        const LinForm& len = a.second();
        LinForm last = b + len - LinForm(1);  // (b)_len = (b)_{len-1} * last
        if (a.exponent() > 0) {
          if (try_take(den, last)) {
            a = HyperAtom::pochhammer(b, len - LinForm(1), 1);
            changed = true;
          } else if (try_take(num, b + len)) {
            a = HyperAtom::pochhammer(b, len + LinForm(1), 1);
            changed = true;
          } else if (try_take(den, b)) {  // (b)_len / b = (b+1)_{len-1}
            a = HyperAtom::pochhammer(b + LinForm(1), len - LinForm(1), 1);
            changed = true;
          } else if (try_take(num, b - LinForm(1))) {
            a = HyperAtom::pochhammer(b - LinForm(1), len + LinForm(1), 1);
            changed = true;
          }
        } else {
          if (try_take(num, last)) {
            a = HyperAtom::pochhammer(b, len - LinForm(1), -1);
            changed = true;
          } else if (try_take(den, b + len)) {
            a = HyperAtom::pochhammer(b, len + LinForm(1), -1);
            changed = true;
          } else if (try_take(num, b)) {
            a = HyperAtom::pochhammer(b + LinForm(1), len - LinForm(1), -1);
            changed = true;
          } else if (try_take(den, b - LinForm(1))) {
            a = HyperAtom::pochhammer(b - LinForm(1), len + LinForm(1), -1);
            changed = true;
          }
        }
      } else if (a.kind() == AtomKind::Poly && a.exponent() != 0) {
        MultiPoly& side = a.exponent() > 0 ? den : num;
        if (!side.is_constant()) {
          if (auto q = divide_exact(side, a.base())) {
            side = std::move(*q);
            a = a.with_exponent(0);
            changed = true;
          }
        }
      }
      if (changed) break;
    }
  }

  std::vector<HyperAtom> atoms;
  for (const auto& a : units) {
    if (a.kind() == AtomKind::Poly && a.exponent() == 0) continue;
    atoms.push_back(a);
  }
  Rational c = ex.constant();
  auto [nu, np] = num.canonical_split();
  auto [du, dp] = den.canonical_split();
  c *= nu / du;
  if (!np.is_constant()) atoms.push_back(HyperAtom::poly(np, 1));
  if (!dp.is_constant()) atoms.push_back(HyperAtom::poly(dp, -1));
  return HyperTerm(c, atoms);
}

// ---------------------------------------------------------------- as_rational

std::optional<RatFunc> as_rational(const HyperTerm& t) {
  struct Gamma {
    LinForm arg;
    int exponent;
  };
  std::vector<Gamma> gammas;
  RatFunc result(t.constant());
  const HyperTerm expanded_term = t.expanded();
  for (const auto& a : expanded_term.atoms()) {
    switch (a.kind()) {
      case AtomKind::Factorial:
        gammas.push_back({a.first() + LinForm(1), a.exponent()});
        break;
      case AtomKind::Pochhammer:
        gammas.push_back({a.first() + a.second(), a.exponent()});
        gammas.push_back({a.first(), -a.exponent()});
        break;
      case AtomKind::Poly:
        result *= RatFunc(a.base()).pow(a.exponent());
        break;
      case AtomKind::Power:
      case AtomKind::Sign:
        return std::nullopt;  // exponent is non-constant after normalization
      case AtomKind::Binomial:
        throw Error("unexpanded binomial");
    }
  }
  // Group gamma arguments that differ by integers and telescope each group
  // onto its smallest member.
  std::vector<bool> used(gammas.size(), false);
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    if (used[i]) continue;
    std::vector<std::size_t> group{i};
    for (std::size_t j = i + 1; j < gammas.size(); ++j) {
      if (used[j]) continue;
      auto d = constant_difference(gammas[j].arg, gammas[i].arg);
      if (d && is_integer(*d)) group.push_back(j);
    }
    int total = 0;
    std::size_t ref = i;
    for (auto g : group) {
      used[g] = true;
      total += gammas[g].exponent;
      if (*constant_difference(gammas[g].arg, gammas[ref].arg) < 0) ref = g;
    }
    if (total != 0) return std::nullopt;
    for (auto g : group) {
      long m = to_long(*constant_difference(gammas[g].arg, gammas[ref].arg));
      FactoredRatio fr;
      multiply_rising(fr, gammas[ref].arg, m, gammas[g].exponent);
      result *= fr.to_ratfunc();
    }
  }
  return result;
}

// ---------------------------------------------------------------- Identity

std::vector<std::string> Identity::sum_vars() const {
  std::vector<std::string> out;
  for (const auto& s : sums) out.push_back(s.var);
  return out;
}

std::vector<std::string> Identity::display_order() const {
  std::vector<std::string> out{main_var};
  for (const auto& s : sums) out.push_back(s.var);
  out.insert(out.end(), params.begin(), params.end());
  return out;
}

Identity divide_by_rhs(const Identity& id) {
  if (id.rhs.size() != 1) {
    throw NotHypergeometric("right-hand side is a sum of " + std::to_string(id.rhs.size()) +
                            " terms, not a single hypergeometric term");
  }
  const HyperTerm& rhs = id.rhs.front();
  if (rhs.is_zero()) throw DivisionByZero("right-hand side is zero");
  for (const auto& s : id.sums) {
    if (rhs.depends_on(s.var)) {
      throw NotHypergeometric("right-hand side depends on summation variable " + s.var);
    }
  }
  Identity out = id;
  out.summand = id.summand / rhs;
  out.rhs = {HyperTerm(1)};
  return out;
}

}  // namespace wzcert
