#include "wzcert/oracle.hpp"

#include <algorithm>
#include <optional>

#include "wzcert/budget.hpp"
#include "wzcert/errors.hpp"

namespace wzcert {

namespace {

Integer ceil_of(const Rational& q) {
  Integer z;
  mpz_cdiv_q(z.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return z;
}

Integer floor_of(const Rational& q) {
  Integer z;
  mpz_fdiv_q(z.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return z;
}

bool is_sum_var(const std::vector<SumRange>& sums, const std::string& v) {
  return std::any_of(sums.begin(), sums.end(), [&](const SumRange& s) { return s.var == v; });
}

/// Value of `form` at `at`, or nullopt if a variable is unassigned.
std::optional<Rational> value_at(const LinForm& form, const Point& at) {
  for (const auto& [v, c] : form.coefficients()) {
    if (at.count(v) == 0U) return std::nullopt;
  }
  return form.evaluate(at);
}

struct Sides {
  std::optional<Rational> lo;
  std::optional<Rational> hi;
};

/// Bounds of summation variable `var` at `at`, before any substitution.
Sides direct_bounds(const HyperTerm& f, const SumRange& range, const Point& at) {
  Sides s;
  if (range.lo) s.lo = value_at(*range.lo, at);
  if (range.hi) s.hi = value_at(*range.hi, at);
  if (range.explicit_range()) return s;
  SupportCandidates c = support_candidates(f, range.var);
  for (const auto& l : c.lower) {
    auto v = value_at(l, at);
    if (v && (!s.lo || *v > *s.lo)) s.lo = v;
  }
  for (const auto& u : c.upper) {
    auto v = value_at(u, at);
    if (v && (!s.hi || *v < *s.hi)) s.hi = v;
  }
  return s;
}

/// Extreme of `form` when unassigned summation variables range over their
/// direct bounds.
std::optional<Rational> extreme(const HyperTerm& f, const std::vector<SumRange>& sums, const LinForm& form,
                                bool upper, const Point& at, const std::string& self) {
  Rational value = form.offset();
  for (const auto& [v, c] : form.coefficients()) {
    auto a = at.find(v);
    if (a != at.end()) {
      value += Rational(c) * a->second;
      continue;
    }
    if (v == self || !is_sum_var(sums, v)) return std::nullopt;
    const SumRange& other = *std::find_if(sums.begin(), sums.end(), [&](const SumRange& s) { return s.var == v; });
    Sides b = direct_bounds(f, other, at);
    bool take_hi = (c > 0) == upper;
    const auto& end = take_hi ? b.hi : b.lo;
    if (!end) return std::nullopt;
    value += Rational(c) * *end;
  }
  return value;
}

std::pair<long, long> bounds_for(const HyperTerm& f, const std::vector<SumRange>& sums, const SumRange& range,
                                 const Point& at) {
  std::optional<Rational> lo;
  std::optional<Rational> hi;
  std::vector<LinForm> lows;
  std::vector<LinForm> highs;
  if (range.lo) lows.push_back(*range.lo);
  if (range.hi) highs.push_back(*range.hi);
  if (!range.explicit_range()) {
    SupportCandidates c = support_candidates(f, range.var);
    lows.insert(lows.end(), c.lower.begin(), c.lower.end());
    highs.insert(highs.end(), c.upper.begin(), c.upper.end());
  }
  for (const auto& l : lows) {
    auto v = extreme(f, sums, l, false, at, range.var);
    if (v && (!lo || *v > *lo)) lo = v;
  }
  for (const auto& u : highs) {
    auto v = extreme(f, sums, u, true, at, range.var);
    if (v && (!hi || *v < *hi)) hi = v;
  }
  if (!lo || !hi) throw Error("summation range for " + range.var + " is not finite at this point");
  return {ceil_of(*lo).get_si(), floor_of(*hi).get_si()};
}

Rational nested_sum(const HyperTerm& f, const std::vector<SumRange>& sums, std::size_t i, Point& at) {
  if (i == sums.size()) return eval_exact(f, at);
  auto [lo, hi] = bounds_for(f, sums, sums[i], at);
  if (hi >= lo) charge_budget(static_cast<std::uint64_t>(hi - lo + 1), "exact summation");
  Rational total = 0;
  for (long k = lo; k <= hi; ++k) {
    at[sums[i].var] = k;
    total += nested_sum(f, sums, i + 1, at);
  }
  at.erase(sums[i].var);
  return total;
}

}  // namespace

std::vector<std::pair<long, long>> resolve_box(const HyperTerm& f, const std::vector<SumRange>& sums,
                                               const Point& at) {
  std::vector<std::pair<long, long>> out;
  for (const auto& s : sums) out.push_back(bounds_for(f, sums, s, at));
  return out;
}

Rational exact_sum(const HyperTerm& f, const std::vector<SumRange>& sums, const Point& at) {
  Point p = at;
  for (const auto& s : sums) p.erase(s.var);
  return nested_sum(f, sums, 0, p);
}

Rational identity_defect(const Identity& id, const Point& at) {
  Rational lhs = exact_sum(id.summand, id.sums, at);
  Rational rhs = 0;
  for (const auto& t : id.rhs) rhs += eval_exact(t, at);
  return lhs - rhs;
}

// ---------------------------------------------------------------- numbers

Rational harmonic(long m) {
  Rational h = 0;
  for (long i = 1; i <= m; ++i) h += Rational(1, i);
  return h;
}

Rational ahlgren_ono_eval(long n) {
  if (n < 1) throw Error("ahlgren_ono_eval needs n >= 1");
  std::vector<Rational> h(static_cast<std::size_t>(2 * n + 1));
  for (long i = 1; i <= 2 * n; ++i) h[static_cast<std::size_t>(i)] = h[static_cast<std::size_t>(i - 1)] + Rational(1, i);
  auto H = [&](long m) { return h[static_cast<std::size_t>(m)]; };
  Rational total = 0;
  for (long k = 1; k <= n; ++k) {
    Integer b1 = binomial(n, k);
    Integer b2 = binomial(n + k, k);
    Rational weight(Integer(k) * b1 * b1 * b2 * b2);
    total += weight * (Rational(1, 2 * k) + H(n + k) + H(n - k) - 2 * H(k));
  }
  return total;
}

Integer apery_number(long n) {
  Integer total = 0;
  for (long k = 0; k <= n; ++k) {
    Integer b1 = binomial(n, k);
    Integer b2 = binomial(n + k, k);
    total += b1 * b1 * b2 * b2;
  }
  return total;
}

// ---------------------------------------------------------------- q-series

QSeries operator*(const QSeries& a, const QSeries& b) {
  long order = std::min(a.order(), b.order());
  QSeries out(order);
  for (long i = 0; i <= order; ++i) {
    if (a[i] == 0) continue;
    for (long j = 0; i + j <= order; ++j) {
      if (b[j] != 0) out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

QSeries QSeries::one(long order) {
  QSeries s(order);
  s[0] = 1;
  return s;
}

QSeries QSeries::one_minus(long step, long order) {
  QSeries s = one(order);
  if (step <= order) s[step] -= 1;
  return s;
}

QSeries eta_product(long order) {
  if (order < 0) throw Error("negative truncation order");
  QSeries prod = QSeries::one(order);
  auto quartic = [&](long step) {
    QSeries f = QSeries::one_minus(step, order);
    QSeries sq = f * f;
    return sq * sq;
  };
  for (long m = 1; 2 * m <= order; ++m) prod = prod * quartic(2 * m);
  for (long m = 1; 4 * m <= order; ++m) prod = prod * quartic(4 * m);
  // multiply by q
  QSeries out(order);
  for (long i = 1; i <= order; ++i) out[i] = prod[i - 1];
  return out;
}

BeukersReport beukers_check(long p, long order) {
  if (p < 3 || p % 2 == 0) throw Error("beukers_check needs an odd prime");
  if (order < p) throw Error("q-series truncated at q^" + std::to_string(order) + " cannot give a(" +
                             std::to_string(p) + ")");
  BeukersReport rep;
  rep.p = p;
  rep.apery_value = apery_number((p - 1) / 2);
  rep.a_value = eta_product(order)[p];
  Integer diff = rep.apery_value - rep.a_value;
  Integer mod = Integer(p) * p;
  rep.congruent = diff % mod == 0;
  return rep;
}

// ---------------------------------------------------------------- demos

Descent sqrt2_descent(const Integer& A, const Integer& B) {
  Descent d;
  d.a = 2 * B - A;
  d.b = A - B;
  Integer before = A * A - 2 * B * B;
  Integer after = d.a * d.a - 2 * d.b * d.b;
  d.invariant_holds = after == -before;
  return d;
}

std::vector<std::pair<Integer, Integer>> descent_chain(const Integer& A, const Integer& B, int max_steps) {
  std::vector<std::pair<Integer, Integer>> chain{{A, B}};
  for (int i = 0; i < max_steps; ++i) {
    const auto& [x, y] = chain.back();
    if (x <= 0 || y <= 0 || (x == 1 && y == 1)) break;
    Descent d = sqrt2_descent(x, y);
    chain.emplace_back(d.a, d.b);
  }
  return chain;
}

bool sqrt2_invariant_symbolic() {
  MultiPoly A = MultiPoly::variable("A");
  MultiPoly B = MultiPoly::variable("B");
  MultiPoly a = MultiPoly(2) * B - A;
  MultiPoly b = A - B;
  return a * a - MultiPoly(2) * b * b == -(A * A - MultiPoly(2) * B * B);
}

bool parable_check(long n) {
  if (n < 1) throw Error("parable_check needs n >= 1");
  auto x = [](long i) { return MultiPoly::variable("x" + std::to_string(i)); };
  MultiPoly e1;
  MultiPoly p2;
  MultiPoly e2;
  MultiPoly e1_prev;
  for (long i = 1; i <= n; ++i) {
    e1_prev = e1;
    e1 += x(i);
    p2 += x(i) * x(i);
    for (long j = 1; j < i; ++j) e2 += x(j) * x(i);
  }
  bool expansion = e1 * e1 == p2 + MultiPoly(2) * e2;
  bool step = e1 * e1 == e1_prev * e1_prev + MultiPoly(2) * e1_prev * x(n) + x(n) * x(n);
  return expansion && step;
}

}  // namespace wzcert
