#include "wzcert/telescoper.hpp"

#include <algorithm>
#include <set>

#include "wzcert/budget.hpp"
#include "wzcert/errors.hpp"
#include "wzcert/linsolve.hpp"

namespace wzcert {

namespace {

const std::string kShiftVar = "h#";

/// Coefficients of p viewed as a polynomial in every variable except `keep`.
void coefficients_excluding(const MultiPoly& p, const std::string& keep, std::vector<MultiPoly>& out) {
  for (const auto& v : p.occurring_variables()) {
    if (v == keep) continue;
    for (const auto& c : p.coefficients_in(v)) {
      if (!c.is_zero()) coefficients_excluding(c, keep, out);
    }
    return;
  }
  out.push_back(p);
}

std::optional<long> nonnegative_integer(const RatFunc& r) {
  if (!r.numerator().is_constant() && !r.is_zero()) return std::nullopt;
  if (!r.denominator().is_constant()) return std::nullopt;
  Rational v = r.is_zero() ? Rational(0) : r.numerator().constant_value() / r.denominator().constant_value();
  if (!is_integer(v) || v < 0 || !v.get_num().fits_slong_p()) return std::nullopt;
  return v.get_num().get_si();
}

int degree_in(const MultiPoly& p, const std::string& k) { return p.is_zero() ? -1 : p.degree(k); }

MultiPoly coefficient_at(const MultiPoly& p, const std::string& k, int i) {
  if (i < 0 || p.is_zero()) return MultiPoly();
  auto cs = p.coefficients_in(k);
  return static_cast<std::size_t>(i) < cs.size() ? cs[static_cast<std::size_t>(i)] : MultiPoly();
}

struct Solution {
  std::vector<MultiPoly> gammas;
  MultiPoly x;
};

/// Solves a(k) x(k+1) - b(k-1) x(k) = sum_j gamma_j cs_j(k) for polynomial
/// x and gamma_j free of k, returning every nullspace basis vector with a
/// nonzero gamma part.
std::vector<Solution> solve_parameterized(const MultiPoly& a, const MultiPoly& b, const std::vector<MultiPoly>& cs,
                                          const std::string& k) {
  int dc = -1;
  for (const auto& c : cs) dc = std::max(dc, degree_in(c, k));
  int bound = gosper_degree_bound(a, b, dc, k);
  MultiPoly bb = b.shifted(k, -1);
  std::vector<MultiPoly> columns;
  for (const auto& c : cs) columns.push_back(-c);
  MultiPoly kp = MultiPoly::variable(k);
  MultiPoly k1 = kp + MultiPoly(1);
  MultiPoly pk(1);
  MultiPoly pk1(1);
  for (int m = 0; m <= bound; ++m) {
    columns.push_back(a * pk1 - bb * pk);
    pk *= kp;
    pk1 *= k1;
  }
  int rows = 0;
  for (const auto& c : columns) rows = std::max(rows, degree_in(c, k) + 1);
  charge_budget(static_cast<std::uint64_t>(rows) * columns.size(), "Gosper system");
  PolyMatrix m(static_cast<std::size_t>(rows), std::vector<MultiPoly>(columns.size()));
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].is_zero()) continue;
    auto coeffs = columns[j].coefficients_in(k);
    for (std::size_t i = 0; i < coeffs.size(); ++i) m[i][j] = coeffs[i];
  }
  std::vector<Solution> out;
  for (auto& vec : nullspace(m, columns.size())) {
    Solution s;
    bool any = false;
    for (std::size_t j = 0; j < cs.size(); ++j) {
      s.gammas.push_back(vec[j]);
      any |= !vec[j].is_zero();
    }
    if (!any) continue;
    MultiPoly power(1);
    for (std::size_t j = cs.size(); j < vec.size(); ++j) {
      if (!vec[j].is_zero()) s.x += vec[j] * power;
      power *= kp;
    }
    out.push_back(std::move(s));
  }
  return out;
}

/// Factors of the numerator (sign > 0) or denominator (sign < 0) of rho
/// that depend on k.
std::vector<MultiPoly> factors_of(const FactoredRatio& rho, int sign, const std::string& k) {
  std::vector<MultiPoly> out;
  for (const auto& [f, m] : rho.factors) {
    if (m * sign > 0 && f.depends_on(k)) out.push_back(f);
  }
  return out;
}

int total_degree_or_minus(const MultiPoly& p) { return p.is_zero() ? -1 : p.total_degree(); }

template <typename Candidate, typename Key>
const Candidate* simplest(const std::vector<Candidate>& cands, Key key) {
  const Candidate* best = nullptr;
  for (const auto& c : cands) {
    if (best == nullptr || simpler_certificate(key(c), key(*best))) best = &c;
  }
  return best;
}

}  // namespace

bool simpler_certificate(const RatFunc& a, const RatFunc& b) {
  int na = total_degree_or_minus(a.numerator());
  int nb = total_degree_or_minus(b.numerator());
  if (na != nb) return na < nb;
  int da = a.denominator().total_degree();
  int db = b.denominator().total_degree();
  if (da != db) return da < db;
  if (a.numerator() != b.numerator()) return a.numerator() < b.numerator();
  return a.denominator() < b.denominator();
}

std::vector<long> dispersion_set(const FactoredRatio& rho, const std::string& k) {
  std::set<long> hs;
  for (const auto& p : factors_of(rho, 1, k)) {
    for (const auto& q : factors_of(rho, -1, k)) {
      if (p.degree(k) == 1 && q.degree(k) == 1) {
        auto pc = p.coefficients_in(k);
        auto qc = q.coefficients_in(k);
        // roots -beta/alpha and -delta/gamma - h coincide
        RatFunc h = RatFunc(pc[0], pc[1]) - RatFunc(qc[0], qc[1]);
        if (auto v = nonnegative_integer(h)) hs.insert(*v);
        continue;
      }
      MultiPoly qh = q.substitute(k, MultiPoly::variable(k) + MultiPoly::variable(kShiftVar));
      MultiPoly res = resultant(p, qh, k);
      if (res.is_zero()) {
        hs.insert(0);
        continue;
      }
      std::vector<MultiPoly> coeffs;
      coefficients_excluding(res, kShiftVar, coeffs);
      MultiPoly g;
      for (const auto& c : coeffs) g = g.is_zero() ? c : gcd(g, c);
      if (g.is_constant()) continue;
      for (const auto& r : integer_roots(g, kShiftVar)) {
        if (r >= 0 && r.fits_slong_p()) hs.insert(r.get_si());
      }
    }
  }
  return {hs.begin(), hs.end()};
}

GosperForm gosper_form(const FactoredRatio& rho, const std::string& k) {
  GosperForm form{rho.numerator(), rho.denominator(), MultiPoly(1)};
  for (long h : dispersion_set(rho, k)) {
    while (true) {
      MultiPoly g = gcd(form.a, form.b.shifted(k, h));
      if (!g.depends_on(k)) break;
      g = exact_quotient(g, content_in(g, k));
      form.a = exact_quotient(form.a, g);
      form.b = exact_quotient(form.b, g.shifted(k, -h));
      for (long i = 1; i <= h; ++i) form.c *= g.shifted(k, -i);
    }
  }
  return form;
}

int gosper_degree_bound(const MultiPoly& a, const MultiPoly& b, int dc, const std::string& k) {
  if (dc < 0) return -1;
  MultiPoly bb = b.shifted(k, -1);
  MultiPoly minus = a - bb;
  MultiPoly plus = a + bb;
  int d1 = degree_in(minus, k);
  int d2 = degree_in(plus, k);
  if (d1 >= d2) return dc - d1;
  int bound = dc - d2 + 1;
  RatFunc ell = RatFunc(MultiPoly(-2) * coefficient_at(minus, k, d2 - 1), coefficient_at(plus, k, d2));
  if (auto v = nonnegative_integer(ell)) bound = std::max(bound, static_cast<int>(*v));
  return bound;
}

std::optional<RatFunc> gosper_ratio(const FactoredRatio& rho, const std::string& k) {
  GosperForm form = gosper_form(rho, k);
  auto sols = solve_parameterized(form.a, form.b, {form.c}, k);
  std::vector<RatFunc> cands;
  MultiPoly bb = form.b.shifted(k, -1);
  for (const auto& s : sols) cands.push_back(RatFunc(bb * s.x, s.gammas[0] * form.c));
  const RatFunc* best = simplest(cands, [](const RatFunc& r) { return r; });
  if (best == nullptr) return std::nullopt;
  RatFunc check = best->shifted(k, 1) * rho.to_ratfunc() - *best;
  if (check != RatFunc(1)) throw Error("internal: Gosper certificate failed verification");
  return *best;
}

std::optional<RatFunc> gosper(const HyperTerm& t, const std::string& k) {
  if (t.is_zero()) return RatFunc(0);
  return gosper_ratio(factored_shift_quotient(t, k), k);
}

std::optional<Recurrence> zeilberger_order(const HyperTerm& f, int order, const std::string& n, const std::string& k) {
  auto ratios = shift_ratios(f, order, n);
  FactoredRatio den;
  for (const auto& r : ratios) {
    for (const auto& [p, m] : r.factors) {
      if (m >= 0) continue;
      auto it = std::find_if(den.factors.begin(), den.factors.end(), [&](const auto& e) { return e.first == p; });
      int have = it == den.factors.end() ? 0 : it->second;
      if (-m > have) den.multiply_factor(p, -m - have);
    }
  }
  std::vector<MultiPoly> numerators;
  for (const auto& r : ratios) {
    FactoredRatio scaled = r;
    scaled *= den;
    numerators.push_back(scaled.numerator());
  }
  MultiPoly dpoly = den.numerator();
  FactoredRatio rho = factored_shift_quotient(f, k);
  rho *= den;
  rho *= den.shifted(k, 1).inverse();
  GosperForm form = gosper_form(rho, k);
  std::vector<MultiPoly> cs;
  for (const auto& nj : numerators) cs.push_back(nj * form.c);
  MultiPoly bb = form.b.shifted(k, -1);

  std::vector<Recurrence> cands;
  for (auto& s : solve_parameterized(form.a, form.b, cs, k)) {
    MultiPoly g;
    for (const auto& c : s.gammas) {
      if (!c.is_zero()) g = g.is_zero() ? c.primitive() : gcd(g, c);
    }
    Recurrence rec;
    RatFunc scale(MultiPoly(1), g);
    std::size_t lead = 0;
    for (std::size_t j = 0; j < s.gammas.size(); ++j) {
      rec.coefficients.push_back(s.gammas[j].is_zero() ? MultiPoly() : exact_quotient(s.gammas[j], g));
      if (!s.gammas[j].is_zero()) lead = j;
    }
    Rational unit = rec.coefficients[lead].canonical_split().first;
    for (auto& c : rec.coefficients) c *= Rational(1 / unit);
    rec.certificate = RatFunc(bb * s.x, form.c * dpoly) * scale * RatFunc(Rational(1 / unit));
    cands.push_back(std::move(rec));
  }
  const Recurrence* best = simplest(cands, [](const Recurrence& r) { return r.certificate; });
  if (best == nullptr) return std::nullopt;
  if (!verify_recurrence_rational(f, *best, n, k).holds) {
    throw Error("internal: recurrence failed verification");
  }
  return *best;
}

Recurrence zeilberger(const HyperTerm& f, int max_order, const std::string& n, const std::string& k) {
  if (max_order < 1) throw Error("max_order must be at least 1");
  for (int j = 1; j <= max_order; ++j) {
    if (auto rec = zeilberger_order(f, j, n, k)) return *rec;
  }
  throw NotFound("no recurrence of order <= " + std::to_string(max_order));
}

std::optional<RatFunc> wz_certificate_find(const HyperTerm& f, const std::string& n, const std::string& k) {
  FactoredRatio r1 = factored_shift_quotient(f, n);
  RatFunc diff = r1.to_ratfunc() - RatFunc(1);
  if (diff.is_zero()) return RatFunc(0);
  const MultiPoly& p = diff.numerator();
  MultiPoly rest = diff.denominator();
  // Split Q over the known denominator factors of r1.
  FactoredRatio q;
  for (const auto& [fac, m] : r1.factors) {
    if (m >= 0) continue;
    while (!rest.is_constant()) {
      auto quo = divide_exact(rest, fac);
      if (!quo) break;
      q.multiply_factor(fac, 1);
      rest = std::move(*quo);
    }
  }
  if (!rest.is_constant()) q.multiply_factor(rest, 1);
  FactoredRatio rho = factored_shift_quotient(f, k);
  rho *= q;
  rho *= q.shifted(k, 1).inverse();
  GosperForm form = gosper_form(rho, k);
  MultiPoly bb = form.b.shifted(k, -1);
  std::vector<RatFunc> cands;
  for (const auto& s : solve_parameterized(form.a, form.b, {p * form.c}, k)) {
    cands.push_back(RatFunc(bb * s.x, s.gammas[0] * form.c * diff.denominator()));
  }
  const RatFunc* best = simplest(cands, [](const RatFunc& r) { return r; });
  if (best == nullptr) return std::nullopt;
  if (!verify_wz_rational(f, *best, Convention::Forward, n, k).holds) {
    throw Error("internal: WZ certificate failed verification");
  }
  return *best;
}

}  // namespace wzcert
