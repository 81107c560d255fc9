#include "wzcert/certifier.hpp"

#include <algorithm>
#include <sstream>

#include "wzcert/errors.hpp"

namespace wzcert {

const std::vector<Convention>& all_conventions() {
  static const std::vector<Convention> all{Convention::Forward, Convention::ForwardNegated,
                                           Convention::Backward, Convention::BackwardNegated};
  return all;
}

std::string convention_name(Convention c) {
  switch (c) {
    case Convention::Forward:
      return "forward";
    case Convention::ForwardNegated:
      return "forward-negated";
    case Convention::Backward:
      return "backward";
    case Convention::BackwardNegated:
      return "backward-negated";
  }
  return "forward";
}

std::optional<Convention> parse_convention(const std::string& name) {
  for (auto c : all_conventions()) {
    if (convention_name(c) == name) return c;
  }
  return std::nullopt;
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Proved:
      return "proved";
    case Verdict::Refuted:
      return "refuted";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

// ---------------------------------------------------------------- rational checks

namespace {

/// The mate side of the WZ equation divided by F(n,k).
RatFunc mate_side(const RatFunc& r, const RatFunc& rho, Convention c, const std::string& k) {
  switch (c) {
    case Convention::Forward:
      return r.shifted(k, 1) * rho - r;
    case Convention::ForwardNegated:
      return r - r.shifted(k, 1) * rho;
    case Convention::Backward:
      return r - r.shifted(k, -1) / rho.shifted(k, -1);
    case Convention::BackwardNegated:
      return r.shifted(k, -1) / rho.shifted(k, -1) - r;
  }
  return r;
}

}  // namespace

RationalCheck verify_wz_rational(const HyperTerm& f, const RatFunc& r, Convention c,
                                 const std::string& n, const std::string& k) {
  RatFunc r1 = shift_quotient(f, n);
  RatFunc rho = shift_quotient(f, k);
  RatFunc diff = (r1 - RatFunc(1)) - mate_side(r, rho, c, k);
  return {diff.is_zero(), diff.numerator()};
}

HyperTerm forward_mate(const HyperTerm& f, const RatFunc& r, Convention c, const std::string& k) {
  switch (c) {
    case Convention::Forward:
      return absorb(f, r);
    case Convention::ForwardNegated:
      return absorb(f, -r);
    case Convention::Backward:
      return absorb(f, r).shifted(k, -1);
    case Convention::BackwardNegated:
      return absorb(f, -r).shifted(k, -1);
  }
  return absorb(f, r);
}

std::vector<FactoredRatio> shift_ratios(const HyperTerm& f, int order, const std::string& n) {
  FactoredRatio q = factored_shift_quotient(f, n);
  std::vector<FactoredRatio> out{FactoredRatio{}};
  for (int j = 1; j <= order; ++j) {
    FactoredRatio next = out.back();
    next *= q.shifted(n, j - 1);
    out.push_back(next);
  }
  return out;
}

RationalCheck verify_recurrence_rational(const HyperTerm& f, const Recurrence& rec,
                                         const std::string& n, const std::string& k) {
  auto ratios = shift_ratios(f, rec.order(), n);
  RatFunc lhs;
  for (int j = 0; j <= rec.order(); ++j) {
    lhs += RatFunc(rec.coefficients[static_cast<std::size_t>(j)]) * ratios[static_cast<std::size_t>(j)].to_ratfunc();
  }
  RatFunc rho = shift_quotient(f, k);
  RatFunc diff = lhs - mate_side(rec.certificate, rho, Convention::Forward, k);
  return {diff.is_zero(), diff.numerator()};
}

// ---------------------------------------------------------------- sums

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

bool assigns_all(const Point& at, const std::set<std::string>& vars, const std::string& except) {
  return std::all_of(vars.begin(), vars.end(),
                     [&](const std::string& v) { return v == except || at.count(v) != 0U; });
}

Point with(Point p, const std::string& var, long value) {
  p[var] = value;
  return p;
}

}  // namespace

std::optional<std::pair<long, long>> support_window(const HyperTerm& f, const std::string& k,
                                                    const Point& at) {
  Support s = natural_support(f, k);
  if (!s.finite()) return std::nullopt;
  if (!assigns_all(at, s.lower->variables(), k) || !assigns_all(at, s.upper->variables(), k)) {
    return std::nullopt;
  }
  return std::make_pair(ceil_of(s.lower->evaluate(at)).get_si(), floor_of(s.upper->evaluate(at)).get_si());
}

Rational sum_range(const HyperTerm& f, const std::string& k, const Point& at, long lo, long hi) {
  Rational total = 0;
  for (long i = lo; i <= hi; ++i) total += eval_exact(f, with(at, k, i));
  return total;
}

// ---------------------------------------------------------------- boundary

namespace {

constexpr long kEvidenceSpan = 8;

struct Window {
  long lo;
  long hi;
};

/// Integer window covering the supports of the given terms at n and n + 1.
std::optional<Window> joint_window(const std::vector<HyperTerm>& terms, const std::string& n,
                                   const std::string& k, long at_n) {
  std::optional<Window> w;
  for (const auto& t : terms) {
    for (long m : {at_n, at_n + 1}) {
      auto sw = support_window(t, k, {{n, m}});
      if (!sw) return std::nullopt;
      if (!w) {
        w = Window{sw->first, sw->second};
      } else {
        w->lo = std::min(w->lo, sw->first);
        w->hi = std::max(w->hi, sw->second);
      }
    }
  }
  return w;
}

/// Pointwise F(n+1,k) - F(n,k) == H(n,k+1) - H(n,k) on [lo, hi]. Returns
/// the first failing k, or a message on a pole.
std::optional<std::string> pointwise_wz(const HyperTerm& f, const HyperTerm& h, const std::string& n,
                                        const std::string& k, long at_n, long lo, long hi) {
  for (long i = lo; i <= hi; ++i) {
    Point p{{n, at_n}, {k, i}};
    try {
      Rational lhs = eval_exact(f, with(p, n, at_n + 1)) - eval_exact(f, p);
      Rational rhs = eval_exact(h, with(p, k, i + 1)) - eval_exact(h, p);
      if (lhs != rhs) {
        return "WZ relation fails at (" + n + "," + k + ")=(" + std::to_string(at_n) + "," +
               std::to_string(i) + ")";
      }
    } catch (const PoleError& e) {
      return std::string("pole at (") + n + "," + k + ")=(" + std::to_string(at_n) + "," +
             std::to_string(i) + "): " + e.what();
    }
  }
  return std::nullopt;
}

std::string bound_string(const Support& s, const std::vector<std::string>& order) {
  return "[" + (s.lower ? s.lower->to_string(order) : std::string("-inf")) + ", " +
         (s.upper ? s.upper->to_string(order) : std::string("+inf")) + "]";
}

/// Sum of signed terms is identically zero, decided through rational
/// quotients against the first nonzero term.
std::optional<bool> signed_sum_vanishes(const std::vector<std::pair<int, HyperTerm>>& terms) {
  std::vector<std::pair<int, HyperTerm>> live;
  for (const auto& [sgn, t] : terms) {
    HyperTerm e = t.expanded();
    if (!e.is_zero()) live.emplace_back(sgn, e);
  }
  if (live.empty()) return true;
  const HyperTerm& ref = live.front().second;
  RatFunc total;
  for (const auto& [sgn, t] : live) {
    auto q = as_rational((t / ref).expanded());
    if (!q) return std::nullopt;
    total += RatFunc(sgn) * *q;
  }
  return total.is_zero();
}

BoundaryReport natural_boundary(const HyperTerm& f, const HyperTerm& g, const std::string& n,
                                const std::string& k, long n0, const std::vector<std::string>& order) {
  BoundaryReport rep;
  Support sf = natural_support(f, k);
  Support sg = natural_support(g, k);
  std::ostringstream ev;
  ev << "support of F in " << k << ": " << bound_string(sf, order) << "; support of G: "
     << bound_string(sg, order);
  if (!sf.finite() || !sg.finite()) {
    ev << "; non-terminating sum with no explicit range: requires analytic tail bound, out of scope";
    rep.evidence = ev.str();
    return rep;
  }
  bool symbolic_only = false;
  for (long m = n0; m <= n0 + kEvidenceSpan; ++m) {
    auto w = joint_window({f, g}, n, k, m);
    if (!w) {
      symbolic_only = true;
      break;
    }
    if (auto bad = pointwise_wz(f, g, n, k, m, w->lo - 2, w->hi + 2)) {
      ev << "; " << *bad;
      rep.evidence = ev.str();
      return rep;
    }
  }
  if (symbolic_only) {
    ev << "; fringe evaluation skipped (bounds depend on parameters)";
  } else {
    ev << "; G vanishes at both fringes and the WZ relation holds pointwise for " << n << "=" << n0 << ".."
       << n0 + kEvidenceSpan;
  }
  rep.ok = true;
  rep.evidence = ev.str();
  return rep;
}

BoundaryReport explicit_boundary(const HyperTerm& f, const HyperTerm& g, const SumRange& range,
                                 const std::string& n, long n0, const std::vector<std::string>& order) {
  BoundaryReport rep;
  const std::string& k = range.var;
  const LinForm& lo = *range.lo;
  const LinForm& hi = *range.hi;
  long alpha = lo.coefficient(n);
  long beta = hi.coefficient(n);
  HyperTerm f1 = f.shifted(n, 1);
  std::vector<std::pair<int, HyperTerm>> terms;
  terms.emplace_back(1, g.substituted(k, hi + LinForm(1)));
  terms.emplace_back(-1, g.substituted(k, lo));
  // Range movement from n to n + 1.
  for (long i = 1; i <= beta; ++i) terms.emplace_back(1, f1.substituted(k, hi + LinForm(i)));
  for (long i = 0; i < -beta; ++i) terms.emplace_back(-1, f1.substituted(k, hi - LinForm(i)));
  for (long i = 0; i < alpha; ++i) terms.emplace_back(-1, f1.substituted(k, lo + LinForm(i)));
  for (long i = 1; i <= -alpha; ++i) terms.emplace_back(1, f1.substituted(k, lo - LinForm(i)));
  std::ostringstream ev;
  ev << "explicit range " << k << " = " << lo.to_string(order) << " .. " << hi.to_string(order);
  std::optional<bool> vanishes;
  try {
    vanishes = signed_sum_vanishes(terms);
  } catch (const Error& e) {
    ev << "; boundary terms not comparable: " << e.what();
    rep.evidence = ev.str();
    return rep;
  }
  if (!vanishes) {
    ev << "; boundary terms are not rational multiples of each other";
    rep.evidence = ev.str();
    return rep;
  }
  if (!*vanishes) {
    ev << "; telescoped boundary terms do not cancel";
    rep.evidence = ev.str();
    return rep;
  }
  bool symbolic_only = false;
  for (long m = n0; m <= n0 + kEvidenceSpan; ++m) {
    Point at{{n, m}};
    if (!assigns_all(at, lo.variables(), k) || !assigns_all(at, hi.variables(), k)) {
      symbolic_only = true;
      break;
    }
    long a = ceil_of(lo.evaluate(at)).get_si();
    long b = floor_of(hi.evaluate(at)).get_si();
    if (auto bad = pointwise_wz(f, g, n, k, m, a, b)) {
      ev << "; " << *bad;
      rep.evidence = ev.str();
      return rep;
    }
  }
  ev << "; telescoped boundary terms cancel identically";
  if (!symbolic_only) ev << "; WZ relation holds pointwise on the range for " << n << "=" << n0 << ".." << n0 + kEvidenceSpan;
  rep.ok = true;
  rep.evidence = ev.str();
  return rep;
}

std::optional<Rational> try_sum(const HyperTerm& f, const std::string& k, const Point& at, long lo, long hi) {
  Rational total = 0;
  for (long i = lo; i <= hi; ++i) {
    auto v = try_eval(f, with(at, k, i));
    if (!v) return std::nullopt;
    total += *v;
  }
  return total;
}

std::optional<Rational> sum_at(const HyperTerm& f, const SumRange& range, const std::string& n, long m) {
  Point at{{n, m}};
  if (range.explicit_range()) {
    if (!assigns_all(at, range.lo->variables(), range.var) || !assigns_all(at, range.hi->variables(), range.var)) {
      return std::nullopt;
    }
    return try_sum(f, range.var, at, ceil_of(range.lo->evaluate(at)).get_si(),
                   floor_of(range.hi->evaluate(at)).get_si());
  }
  auto w = support_window(f, range.var, at);
  if (!w) return std::nullopt;
  return try_sum(f, range.var, at, w->first, w->second);
}

std::optional<Rational> rhs_at(const Identity& id, long m) {
  Point at{{id.main_var, m}};
  Rational total = 0;
  for (const auto& t : id.rhs) {
    auto v = try_eval(t, at);
    if (!v) return std::nullopt;
    total += *v;
  }
  return total;
}

}  // namespace

SupportAndBase verify_support_and_base(const Identity& normalized, const Certificate& cert, long n0) {
  if (normalized.sums.size() != 1 || cert.rs.size() != 1) {
    throw Error("single-sum verification needs one summation variable and one certificate");
  }
  const SumRange& range = normalized.sums.front();
  const std::string& n = normalized.main_var;
  const HyperTerm& f = normalized.summand;
  HyperTerm g = forward_mate(f, cert.rs.front(), cert.convention, range.var);
  SupportAndBase out;
  auto order = normalized.display_order();
  out.boundary = range.explicit_range() ? explicit_boundary(f, g, range, n, n0, order)
                                        : natural_boundary(f, g, n, range.var, n0, order);
  out.base.n0 = n0;
  out.base.expected = 1;
  try {
    if (auto v = sum_at(f, range, n, n0)) {
      out.base.computed = true;
      out.base.value = *v;
      out.base.ok = *v == 1;
    }
  } catch (const PoleError&) {
    out.base.computed = false;
  }
  return out;
}

// ---------------------------------------------------------------- certify

long choose_base_index(const Identity& id, long start) {
  for (long m = start; m < start + 64; ++m) {
    try {
      auto v = rhs_at(id, m);
      if (!v) return start;
      if (*v != 0) return m;
    } catch (const PoleError&) {
    }
  }
  return start;
}

namespace {

Point parameter_point(const Identity& id) {
  Point p;
  for (const auto& x : id.params) p[x] = 1;
  return p;
}

std::optional<Point> find_wz_counterexample(const Identity& normalized, const RatFunc& r, Convention c) {
  const std::string& n = normalized.main_var;
  const std::string& k = normalized.sums.front().var;
  const HyperTerm& f = normalized.summand;
  HyperTerm g = forward_mate(f, r, c, k);
  Point base = parameter_point(normalized);
  for (long m = 0; m <= 12; ++m) {
    for (long i = -2; i <= 12; ++i) {
      Point p = base;
      p[n] = m;
      p[k] = i;
      try {
        Rational lhs = eval_exact(f, with(p, n, m + 1)) - eval_exact(f, p);
        Rational rhs = eval_exact(g, with(p, k, i + 1)) - eval_exact(g, p);
        if (lhs != rhs) return p;
      } catch (const Error&) {
      }
    }
  }
  return std::nullopt;
}

/// Raw base case. Returns false (and fills the report) on a refutation.
bool raw_base_case(const Identity& id, long n0, CertReport& rep) {
  try {
    auto lhs = sum_at(id.summand, id.sums.front(), id.main_var, n0);
    auto rhs = rhs_at(id, n0);
    if (!lhs || !rhs) {
      rep.notes.push_back("base case not evaluated numerically");
      return true;
    }
    if (*lhs != *rhs) {
      rep.verdict = Verdict::Refuted;
      rep.base = BaseReport{false, true, n0, *lhs, *rhs};
      rep.counterexample = Point{{id.main_var, n0}};
      rep.notes.push_back("sum at " + id.main_var + "=" + std::to_string(n0) + " is " + to_string(*lhs) +
                          ", right-hand side is " + to_string(*rhs));
      return false;
    }
  } catch (const PoleError& e) {
    rep.notes.push_back(std::string("base case hit a pole: ") + e.what());
  }
  return true;
}

bool normalize_into(const Identity& id, CertReport& rep) {
  try {
    rep.normalized = divide_by_rhs(id);
    return true;
  } catch (const Error& e) {
    rep.verdict = Verdict::Inconclusive;
    rep.notes.push_back(std::string("cannot divide by the right-hand side: ") + e.what());
    return false;
  }
}

}  // namespace

CertReport certify_identity(const Identity& id, const Certificate& cert, const CertOptions& options) {
  if (id.sums.size() != 1) throw Error("certify_identity handles single sums; use multi-verify");
  if (cert.rs.size() != 1) throw Error("single-sum certificate must hold exactly one rational function");
  CertReport rep;
  long n0 = choose_base_index(id, options.n0.value_or(0));
  rep.base.n0 = n0;
  if (!raw_base_case(id, n0, rep)) return rep;
  if (!normalize_into(id, rep)) return rep;

  const std::string& n = id.main_var;
  const std::string& k = id.sums.front().var;
  const HyperTerm& f = rep.normalized.summand;
  const RatFunc& r = cert.rs.front();

  std::vector<Convention> order{cert.convention};
  if (options.try_all_conventions) {
    for (auto c : all_conventions()) {
      if (c != cert.convention) order.push_back(c);
    }
  }
  std::optional<Convention> passing;
  for (auto c : order) {
    rep.conventions_tried.push_back(c);
    RationalCheck chk = verify_wz_rational(f, r, c, n, k);
    if (c == cert.convention) rep.residual = chk.residual;
    if (chk.holds) {
      passing = c;
      rep.residual = chk.residual;
      break;
    }
  }
  if (!passing) {
    rep.verdict = Verdict::Refuted;
    rep.convention = cert.convention;
    rep.counterexample = find_wz_counterexample(rep.normalized, r, cert.convention);
    std::string tried;
    for (auto c : rep.conventions_tried) tried += (tried.empty() ? "" : ", ") + convention_name(c);
    rep.notes.push_back("certificate fails the WZ equation under: " + tried);
    return rep;
  }
  rep.rational_identity_holds = true;
  rep.convention = *passing;
  if (*passing != cert.convention) {
    rep.notes.push_back("certificate holds under convention " + convention_name(*passing));
  }
  rep.mate = forward_mate(f, r, *passing, k);
  SupportAndBase sb = verify_support_and_base(rep.normalized, Certificate{{r}, *passing}, n0);
  rep.boundary = sb.boundary;
  rep.base = sb.base;
  if (!sb.base.computed) {
    rep.verdict = Verdict::Inconclusive;
    rep.notes.push_back("base case could not be evaluated");
  } else if (!sb.base.ok) {
    rep.verdict = Verdict::Refuted;
    rep.counterexample = Point{{n, n0}};
  } else if (!sb.boundary.ok) {
    rep.verdict = Verdict::Inconclusive;
  } else {
    rep.verdict = Verdict::Proved;
  }
  return rep;
}

CertReport certify_by_recurrence(const Identity& id, const Recurrence& rec, const CertOptions& options) {
  if (id.sums.size() != 1) throw Error("certify_by_recurrence handles single sums");
  CertReport rep;
  long n0 = choose_base_index(id, options.n0.value_or(0));
  rep.base.n0 = n0;
  if (!raw_base_case(id, n0, rep)) return rep;
  if (!normalize_into(id, rep)) return rep;

  const std::string& n = id.main_var;
  const SumRange& range = id.sums.front();
  const std::string& k = range.var;
  const HyperTerm& f = rep.normalized.summand;
  auto order = rep.normalized.display_order();

  RationalCheck chk = verify_recurrence_rational(f, rec, n, k);
  rep.residual = chk.residual;
  if (!chk.holds) {
    rep.verdict = Verdict::Inconclusive;
    rep.notes.push_back("recurrence certificate fails its rational identity");
    return rep;
  }
  rep.rational_identity_holds = true;
  rep.mate = absorb(f, rec.certificate);

  // Boundary: both F and G of finite natural support (an explicit range is
  // accepted when it contains the natural support).
  Support sf = natural_support(f, k);
  Support sg = natural_support(rep.mate, k);
  std::ostringstream ev;
  ev << "support of F in " << k << ": " << bound_string(sf, order) << "; support of G: " << bound_string(sg, order);
  bool finite = sf.finite() && sg.finite();
  if (finite && range.explicit_range()) {
    auto dl = constant_difference(*sf.lower, *range.lo);
    auto dh = constant_difference(*range.hi, *sf.upper);
    if (!dl || !dh || *dl < 0 || *dh < 0) finite = false;
  }
  if (!finite) {
    ev << "; no finite support covering the summation range";
    rep.boundary = {false, ev.str()};
    rep.verdict = Verdict::Inconclusive;
    return rep;
  }
  auto ratios_ok = [&](long m) -> std::optional<std::string> {
    std::vector<HyperTerm> shifted;
    for (int j = 0; j <= rec.order(); ++j) shifted.push_back(f.shifted(n, j));
    shifted.push_back(rep.mate);
    auto w = joint_window(shifted, n, k, m);
    if (!w) return std::string("bounds depend on parameters");
    for (long i = w->lo - 2; i <= w->hi + 2; ++i) {
      Point p{{n, m}, {k, i}};
      try {
        Rational lhs = 0;
        for (int j = 0; j <= rec.order(); ++j) {
          lhs += rec.coefficients[static_cast<std::size_t>(j)].evaluate(p) * eval_exact(f, with(p, n, m + j));
        }
        Rational rhs = eval_exact(rep.mate, with(p, k, i + 1)) - eval_exact(rep.mate, p);
        if (lhs != rhs) return "recurrence relation fails at (" + n + "," + k + ")=(" + std::to_string(m) + "," + std::to_string(i) + ")";
      } catch (const PoleError& e) {
        return std::string("pole: ") + e.what();
      }
    }
    return std::nullopt;
  };
  for (long m = n0; m <= n0 + kEvidenceSpan; ++m) {
    if (auto bad = ratios_ok(m)) {
      ev << "; " << *bad;
      rep.boundary = {false, ev.str()};
      rep.verdict = Verdict::Inconclusive;
      return rep;
    }
  }
  ev << "; G vanishes at both fringes for " << n << "=" << n0 << ".." << n0 + kEvidenceSpan;
  rep.boundary = {true, ev.str()};

  // The constant 1 must solve the recurrence.
  MultiPoly total;
  for (const auto& c : rec.coefficients) total += c;
  auto check_value = [&](long m) -> std::optional<bool> {
    auto v = sum_at(f, range, n, m);
    if (!v) return std::nullopt;
    if (*v != 1) {
      rep.verdict = Verdict::Refuted;
      rep.counterexample = Point{{n, m}};
      rep.base = BaseReport{m == n0 ? false : rep.base.ok, true, n0, *v, 1};
      rep.notes.push_back("normalized sum at " + n + "=" + std::to_string(m) + " is " + to_string(*v));
      return false;
    }
    return true;
  };
  if (!total.is_zero()) {
    for (long m = n0; m <= n0 + 30; ++m) {
      auto ok = check_value(m);
      if (!ok) break;
      if (!*ok) return rep;
    }
    rep.verdict = Verdict::Inconclusive;
    rep.notes.push_back("the constant sequence does not satisfy the recurrence");
    return rep;
  }
  // Initial values, past every integer root of the leading coefficient.
  const MultiPoly& lead = rec.coefficients.back();
  long last = n0 + rec.order() - 1;
  bool params = false;
  for (const auto& v : lead.occurring_variables()) params |= v != n;
  if (params) {
    rep.verdict = Verdict::Inconclusive;
    rep.notes.push_back("leading coefficient depends on parameters");
    return rep;
  }
  for (const auto& root : integer_roots(lead, n)) {
    if (root >= n0 && root.fits_slong_p()) last = std::max(last, root.get_si() + rec.order());
  }
  rep.base.n0 = n0;
  rep.base.expected = 1;
  for (long m = n0; m <= last; ++m) {
    auto ok = check_value(m);
    if (!ok) {
      rep.verdict = Verdict::Inconclusive;
      rep.notes.push_back("initial values could not be evaluated");
      return rep;
    }
    if (!*ok) return rep;
    if (m == n0) {
      rep.base.computed = true;
      rep.base.ok = true;
      rep.base.value = 1;
    }
  }
  rep.notes.push_back("initial values checked for " + n + "=" + std::to_string(n0) + ".." + std::to_string(last));
  rep.verdict = Verdict::Proved;
  return rep;
}

}  // namespace wzcert
