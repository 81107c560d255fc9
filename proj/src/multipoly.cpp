#include "wzcert/multipoly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "wzcert/errors.hpp"

namespace wzcert {

bool MultiPoly::GrlexLess::operator()(const Exponents& a, const Exponents& b) const {
  int da = std::accumulate(a.begin(), a.end(), 0);
  int db = std::accumulate(b.begin(), b.end(), 0);
  if (da != db) return da < db;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

MultiPoly::MultiPoly(const Rational& c) {
  if (c != 0) terms_.emplace(Exponents{}, c);
}

MultiPoly::MultiPoly(long c) : MultiPoly(Rational(c)) {}

MultiPoly::MultiPoly(const std::vector<std::string>& vars, const TermMap& terms) {
  std::vector<std::string> sorted = vars;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error("duplicate variable in polynomial universe");
  }
  vars_ = sorted;
  std::vector<std::size_t> position(vars.size());
  for (std::size_t i = 0; i < vars.size(); ++i) {
    position[i] = static_cast<std::size_t>(
        std::lower_bound(sorted.begin(), sorted.end(), vars[i]) - sorted.begin());
  }
  for (const auto& [exps, c] : terms) {
    if (exps.size() != vars.size()) throw Error("exponent vector length mismatch");
    if (c == 0) continue;
    Exponents e(vars.size(), 0);
    for (std::size_t i = 0; i < exps.size(); ++i) {
      if (exps[i] < 0) throw Error("negative exponent in polynomial");
      e[position[i]] = exps[i];
    }
    terms_[e] += c;
  }
  drop_zeros();
}

MultiPoly MultiPoly::variable(const std::string& name) {
  MultiPoly p;
  p.vars_ = {name};
  p.terms_.emplace(Exponents{1}, Rational(1));
  return p;
}

void MultiPoly::drop_zeros() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second == 0) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
}

bool MultiPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const auto& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

Rational MultiPoly::constant_value() const {
  if (!is_constant()) throw Error("polynomial " + to_string() + " is not constant");
  return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

Rational MultiPoly::constant_coefficient() const {
  auto it = terms_.find(Exponents(vars_.size(), 0));
  return it == terms_.end() ? Rational(0) : it->second;
}

bool MultiPoly::depends_on(const std::string& var) const {
  auto it = std::lower_bound(vars_.begin(), vars_.end(), var);
  if (it == vars_.end() || *it != var) return false;
  auto idx = static_cast<std::size_t>(it - vars_.begin());
  return std::any_of(terms_.begin(), terms_.end(),
                     [idx](const auto& t) { return t.first[idx] != 0; });
}

std::vector<std::string> MultiPoly::occurring_variables() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    for (const auto& t : terms_) {
      if (t.first[i] != 0) {
        out.push_back(vars_[i]);
        break;
      }
    }
  }
  return out;
}

int MultiPoly::degree(const std::string& var) const {
  auto it = std::lower_bound(vars_.begin(), vars_.end(), var);
  if (it == vars_.end() || *it != var) return terms_.empty() ? -1 : 0;
  auto idx = static_cast<std::size_t>(it - vars_.begin());
  int d = terms_.empty() ? -1 : 0;
  for (const auto& t : terms_) d = std::max(d, t.first[idx]);
  return d;
}

int MultiPoly::total_degree() const {
  if (terms_.empty()) return -1;
  const auto& e = terms_.rbegin()->first;
  return std::accumulate(e.begin(), e.end(), 0);
}

const MultiPoly::Exponents& MultiPoly::leading_exponents() const {
  if (terms_.empty()) throw Error("leading term of zero polynomial");
  return terms_.rbegin()->first;
}

const Rational& MultiPoly::leading_coefficient() const {
  if (terms_.empty()) throw Error("leading coefficient of zero polynomial");
  return terms_.rbegin()->second;
}

std::vector<std::string> MultiPoly::merged_universe(const std::vector<std::string>& a,
                                                    const std::vector<std::string>& b) {
  std::vector<std::string> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

MultiPoly MultiPoly::embedded(const std::vector<std::string>& universe) const {
  if (universe == vars_) return *this;
  std::vector<std::size_t> position(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    auto it = std::lower_bound(universe.begin(), universe.end(), vars_[i]);
    if (it == universe.end() || *it != vars_[i]) {
      throw Error("embedding into a universe that lacks variable " + vars_[i]);
    }
    position[i] = static_cast<std::size_t>(it - universe.begin());
  }
  MultiPoly out;
  out.vars_ = universe;
  for (const auto& [e, c] : terms_) {
    Exponents ne(universe.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) ne[position[i]] = e[i];
    out.terms_.emplace(std::move(ne), c);
  }
  return out;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly out = *this;
  for (auto& t : out.terms_) t.second = -t.second;
  return out;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& other) {
  if (other.terms_.empty()) return *this;
  if (vars_ != other.vars_) {
    auto u = merged_universe(vars_, other.vars_);
    *this = embedded(u);
    MultiPoly o = other.embedded(u);
    for (const auto& [e, c] : o.terms_) terms_[e] += c;
  } else {
    for (const auto& [e, c] : other.terms_) terms_[e] += c;
  }
  drop_zeros();
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& other) { return *this += -other; }

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  if (a.terms_.empty() || b.terms_.empty()) return MultiPoly();
  const MultiPoly* pa = &a;
  const MultiPoly* pb = &b;
  MultiPoly ea, eb;
  if (a.vars_ != b.vars_) {
    auto u = MultiPoly::merged_universe(a.vars_, b.vars_);
    ea = a.embedded(u);
    eb = b.embedded(u);
    pa = &ea;
    pb = &eb;
  }
  MultiPoly out;
  out.vars_ = pa->vars_;
  const std::size_t n = out.vars_.size();
  MultiPoly::Exponents e(n);
  for (const auto& [ea_exp, ca] : pa->terms_) {
    for (const auto& [eb_exp, cb] : pb->terms_) {
      for (std::size_t i = 0; i < n; ++i) e[i] = ea_exp[i] + eb_exp[i];
      out.terms_[e] += ca * cb;
    }
  }
  out.drop_zeros();
  return out;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& other) {
  *this = *this * other;
  return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= c;
  return *this;
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly result(1);
  MultiPoly base = *this;
  while (e > 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  if (a.vars_ == b.vars_) return a.terms_ == b.terms_;
  auto u = MultiPoly::merged_universe(a.vars_, b.vars_);
  return a.embedded(u).terms_ == b.embedded(u).terms_;
}

bool operator<(const MultiPoly& a, const MultiPoly& b) {
  auto u = MultiPoly::merged_universe(a.vars_, b.vars_);
  MultiPoly ea = a.embedded(u);
  MultiPoly eb = b.embedded(u);
  MultiPoly::GrlexLess less;
  auto ia = ea.terms_.rbegin();
  auto ib = eb.terms_.rbegin();
  for (; ia != ea.terms_.rend() && ib != eb.terms_.rend(); ++ia, ++ib) {
    if (ia->first != ib->first) return less(ia->first, ib->first);
    if (ia->second != ib->second) return ia->second < ib->second;
  }
  return ia == ea.terms_.rend() && ib != eb.terms_.rend();
}

std::vector<MultiPoly> MultiPoly::coefficients_in(const std::string& var) const {
  auto it = std::lower_bound(vars_.begin(), vars_.end(), var);
  if (it == vars_.end() || *it != var) return {*this};
  auto idx = static_cast<std::size_t>(it - vars_.begin());
  std::vector<MultiPoly> out(static_cast<std::size_t>(std::max(degree(var), 0)) + 1);
  for (auto& c : out) c.vars_ = vars_;
  for (const auto& [e, c] : terms_) {
    Exponents ne = e;
    auto d = static_cast<std::size_t>(ne[idx]);
    ne[idx] = 0;
    out[d].terms_.emplace(std::move(ne), c);
  }
  return out;
}

MultiPoly MultiPoly::from_coefficients(const std::string& var, const std::vector<MultiPoly>& coeffs) {
  MultiPoly x = variable(var);
  MultiPoly out;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    out = out * x + coeffs[i];
  }
  return out;
}

MultiPoly MultiPoly::leading_coefficient_in(const std::string& var) const {
  auto cs = coefficients_in(var);
  return cs.back();
}

MultiPoly MultiPoly::substitute(const std::string& var, const MultiPoly& value) const {
  if (!depends_on(var)) return *this;
  auto cs = coefficients_in(var);
  MultiPoly out;
  for (std::size_t i = cs.size(); i-- > 0;) {
    out = out * value + cs[i];
  }
  return out;
}

MultiPoly MultiPoly::shifted(const std::string& var, long h) const {
  if (h == 0) return *this;
  return substitute(var, variable(var) + MultiPoly(h));
}

MultiPoly MultiPoly::renamed(const std::map<std::string, std::string>& names) const {
  std::vector<std::string> nv = vars_;
  for (auto& v : nv) {
    auto it = names.find(v);
    if (it != names.end()) v = it->second;
  }
  return MultiPoly(nv, terms_);
}

Rational MultiPoly::evaluate(const Point& point) const {
  std::vector<Rational> values(vars_.size());
  std::vector<bool> needed(vars_.size(), false);
  for (const auto& t : terms_) {
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (t.first[i] != 0) needed[i] = true;
    }
  }
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (!needed[i]) continue;
    auto it = point.find(vars_[i]);
    if (it == point.end()) throw Error("no value for variable " + vars_[i]);
    values[i] = it->second;
  }
  Rational sum = 0;
  for (const auto& [e, c] : terms_) {
    Rational term = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] != 0) term *= power(values[i], e[i]);
    }
    sum += term;
  }
  return sum;
}

MultiPoly MultiPoly::partial_evaluate(const Point& point) const {
  MultiPoly out = *this;
  for (const auto& [var, value] : point) {
    if (out.depends_on(var)) out = out.substitute(var, MultiPoly(value));
  }
  return out;
}

Rational MultiPoly::content() const {
  if (terms_.empty()) return 0;
  Integer num_gcd = 0;
  Integer den_lcm = 1;
  for (const auto& t : terms_) {
    num_gcd = gcd(num_gcd, t.second.get_num());
    den_lcm = lcm(den_lcm, t.second.get_den());
  }
  return make_rational(num_gcd, den_lcm);
}

std::pair<Rational, MultiPoly> MultiPoly::canonical_split() const {
  if (terms_.empty()) return {Rational(0), MultiPoly()};
  Rational unit = content();
  if (leading_coefficient() < 0) unit = -unit;
  MultiPoly prim = *this;
  if (unit != 1) prim *= Rational(1 / unit);
  return {unit, prim};
}

namespace {

std::string monomial_string(const std::vector<std::string>& vars, const MultiPoly::Exponents& e,
                            const std::vector<std::size_t>& display_order) {
  std::string out;
  for (std::size_t idx : display_order) {
    if (e[idx] == 0) continue;
    if (!out.empty()) out += "*";
    out += vars[idx];
    if (e[idx] > 1) out += "^" + std::to_string(e[idx]);
  }
  return out;
}

}  // namespace

std::string MultiPoly::to_string() const { return to_string({}); }

std::string MultiPoly::to_string(const std::vector<std::string>& priority) const {
  if (terms_.empty()) return "0";
  // Display ranking: priority variables first (in the given order), then the
  // remaining universe alphabetically.
  std::vector<std::size_t> order;
  for (const auto& p : priority) {
    auto it = std::lower_bound(vars_.begin(), vars_.end(), p);
    if (it != vars_.end() && *it == p) {
      auto idx = static_cast<std::size_t>(it - vars_.begin());
      if (std::find(order.begin(), order.end(), idx) == order.end()) order.push_back(idx);
    }
  }
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (std::find(order.begin(), order.end(), i) == order.end()) order.push_back(i);
  }
  std::vector<std::pair<Exponents, Rational>> sorted;
  for (const auto& [e, c] : terms_) {
    Exponents key(e.size());
    for (std::size_t i = 0; i < order.size(); ++i) key[i] = e[order[i]];
    sorted.emplace_back(key, c);
  }
  GrlexLess less;
  std::sort(sorted.begin(), sorted.end(),
            [&less](const auto& a, const auto& b) { return less(b.first, a.first); });
  std::vector<std::size_t> identity(order.size());
  std::iota(identity.begin(), identity.end(), 0);
  std::vector<std::string> ranked_vars;
  for (auto idx : order) ranked_vars.push_back(vars_[idx]);

  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : sorted) {
    std::string mono = monomial_string(ranked_vars, e, identity);
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (mono.empty()) {
      os << wzcert::to_string(mag);
    } else if (mag == 1) {
      os << mono;
    } else {
      os << wzcert::to_string(mag) << "*" << mono;
    }
  }
  return os.str();
}

std::optional<MultiPoly> divide_exact(const MultiPoly& a, const MultiPoly& b) {
  if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
  if (a.is_zero()) return MultiPoly();
  if (b.is_constant()) return a * Rational(1 / b.constant_value());
  auto u = a.variables();
  {
    std::vector<std::string> merged;
    std::set_union(u.begin(), u.end(), b.variables().begin(), b.variables().end(),
                   std::back_inserter(merged));
    u = merged;
  }
  MultiPoly r = a.embedded(u);
  MultiPoly d = b.embedded(u);
  const auto& lead_e = d.leading_exponents();
  const Rational lead_c = d.leading_coefficient();
  MultiPoly::TermMap qterms;
  while (!r.is_zero()) {
    const auto& re = r.leading_exponents();
    MultiPoly::Exponents diff(re.size());
    for (std::size_t i = 0; i < re.size(); ++i) {
      diff[i] = re[i] - lead_e[i];
      if (diff[i] < 0) return std::nullopt;
    }
    Rational c = r.leading_coefficient() / lead_c;
    MultiPoly t(u, MultiPoly::TermMap{{diff, c}});
    qterms[diff] += c;
    r -= t * d;
  }
  return MultiPoly(u, qterms);
}

MultiPoly exact_quotient(const MultiPoly& a, const MultiPoly& b) {
  auto q = divide_exact(a, b);
  if (!q) throw Error("inexact polynomial division: (" + a.to_string() + ") / (" + b.to_string() + ")");
  return *q;
}

MultiPoly pseudo_remainder(const MultiPoly& a, const MultiPoly& b, const std::string& var) {
  int db = b.degree(var);
  if (db < 0) throw DivisionByZero("pseudo-remainder by zero");
  MultiPoly lcb = b.leading_coefficient_in(var);
  MultiPoly r = a;
  int steps = std::max(a.degree(var) - db + 1, 0);
  MultiPoly x = MultiPoly::variable(var);
  while (!r.is_zero() && r.degree(var) >= db) {
    int s = r.degree(var) - db;
    MultiPoly lcr = r.leading_coefficient_in(var);
    r = lcb * r - lcr * x.pow(static_cast<unsigned>(s)) * b;
    --steps;
  }
  if (steps > 0) r *= lcb.pow(static_cast<unsigned>(steps));
  return r;
}

MultiPoly content_in(const MultiPoly& p, const std::string& var) {
  MultiPoly g;
  for (const auto& c : p.coefficients_in(var)) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? c.primitive() : gcd(g, c);
    if (g.is_constant()) return MultiPoly(1);
  }
  return g;
}

namespace {

MultiPoly monomial_gcd(const MultiPoly& a, const MultiPoly& b) {
  std::vector<std::string> u;
  std::set_union(a.variables().begin(), a.variables().end(), b.variables().begin(),
                 b.variables().end(), std::back_inserter(u));
  MultiPoly ea = a.embedded(u);
  MultiPoly eb = b.embedded(u);
  MultiPoly::Exponents m = ea.terms().begin()->first;
  for (const auto* p : {&ea, &eb}) {
    for (const auto& t : p->terms()) {
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::min(m[i], t.first[i]);
    }
  }
  return MultiPoly(u, MultiPoly::TermMap{{m, Rational(1)}});
}

}  // namespace

MultiPoly gcd(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_zero() && b.is_zero()) throw Error("gcd of two zero polynomials");
  if (a.is_zero()) return b.primitive();
  if (b.is_zero()) return a.primitive();
  if (a.is_constant() || b.is_constant()) return MultiPoly(1);
  if (a.size() == 1 || b.size() == 1) return monomial_gcd(a, b);

  auto va = a.occurring_variables();
  auto vb = b.occurring_variables();
  // A variable present in only one argument: the gcd is free of it, so it
  // divides every coefficient with respect to that variable.
  for (const auto& v : va) {
    if (!std::binary_search(vb.begin(), vb.end(), v)) {
      MultiPoly g = b.primitive();
      for (const auto& c : a.coefficients_in(v)) {
        if (c.is_zero()) continue;
        g = gcd(g, c);
        if (g.is_constant()) return MultiPoly(1);
      }
      return g;
    }
  }
  for (const auto& v : vb) {
    if (!std::binary_search(va.begin(), va.end(), v)) return gcd(b, a);
  }

  // Main variable: smallest combined degree keeps the remainder sequence short.
  std::string x = va.front();
  int best = a.degree(x) + b.degree(x);
  for (const auto& v : va) {
    int d = a.degree(v) + b.degree(v);
    if (d < best) {
      best = d;
      x = v;
    }
  }

  MultiPoly ca = content_in(a, x);
  MultiPoly cb = content_in(b, x);
  MultiPoly cg = gcd(ca, cb);
  MultiPoly A = exact_quotient(a, ca);
  MultiPoly B = exact_quotient(b, cb);
  if (A.degree(x) < B.degree(x)) std::swap(A, B);
  while (true) {
    MultiPoly r = pseudo_remainder(A, B, x);
    if (r.is_zero()) break;
    if (r.degree(x) == 0) {
      B = MultiPoly(1);
      break;
    }
    A = std::move(B);
    B = exact_quotient(r, content_in(r, x));
  }
  B = exact_quotient(B, content_in(B, x));
  return (cg * B).primitive();
}

MultiPoly lcm(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_zero() || b.is_zero()) return MultiPoly();
  return exact_quotient(a * b, gcd(a, b)).primitive();
}

std::vector<Integer> integer_roots(const MultiPoly& p, const std::string& var) {
  if (p.is_zero()) throw Error("integer roots of the zero polynomial");
  for (const auto& v : p.occurring_variables()) {
    if (v != var) throw Error("integer_roots: polynomial mentions " + v);
  }
  std::vector<MultiPoly> cs = p.primitive().coefficients_in(var);
  std::vector<Integer> a;
  for (const auto& c : cs) a.push_back(c.is_zero() ? Integer(0) : c.constant_value().get_num());
  std::vector<Integer> roots;
  std::size_t low = 0;
  while (low < a.size() && a[low] == 0) ++low;
  if (low > 0) roots.push_back(0);
  a.erase(a.begin(), a.begin() + static_cast<long>(low));
  if (a.size() <= 1) return roots;
  // Every nonzero integer root divides a[0]; scan candidates below the
  // Cauchy bound and test them by Horner evaluation.
  Integer bound = 0;
  for (std::size_t i = 0; i + 1 < a.size(); ++i) {
    Integer q = abs(a[i]) / abs(a.back()) + 1;
    if (q > bound) bound = q;
  }
  bound += 1;
  Integer t0 = abs(a.front());
  if (t0 < bound) bound = t0;
  auto is_root = [&a](const Integer& r) {
    Integer v = 0;
    for (auto it = a.rbegin(); it != a.rend(); ++it) v = v * r + *it;
    return v == 0;
  };
  if (!bound.fits_slong_p()) throw Error("integer_roots: coefficients too large");
  long b = bound.get_si();
  if (b > 50000000) throw Error("integer_roots: root bound too large");
  for (long r = 1; r <= b; ++r) {
    if (t0 % r != 0) continue;
    if (is_root(Integer(-r))) roots.push_back(-r);
    if (is_root(Integer(r))) roots.push_back(r);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace wzcert
