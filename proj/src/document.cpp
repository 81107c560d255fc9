#include "wzcert/document.hpp"

#include <algorithm>
#include <sstream>

#include "wzcert/version.hpp"

namespace wzcert {

namespace {

/// k1 -> k_{1} in LaTeX.
std::string var_name(const std::string& v, bool latex) {
  if (!latex) return v;
  std::size_t cut = v.size();
  while (cut > 0 && std::isdigit(static_cast<unsigned char>(v[cut - 1])) != 0) --cut;
  if (cut == 0 || cut == v.size()) return v;
  return v.substr(0, cut) + "_{" + v.substr(cut) + "}";
}

std::string rational_string(const Rational& q, bool latex) {
  if (!latex || q.get_den() == 1) return to_string(q);
  return "\\tfrac{" + to_string(q.get_num()) + "}{" + to_string(q.get_den()) + "}";
}

/// Ranked variable list: `order` first, then the rest alphabetically.
std::vector<std::string> ranked(const std::vector<std::string>& vars, const std::vector<std::string>& order) {
  std::vector<std::string> out;
  for (const auto& o : order) {
    if (std::find(vars.begin(), vars.end(), o) != vars.end() && std::find(out.begin(), out.end(), o) == out.end()) {
      out.push_back(o);
    }
  }
  for (const auto& v : vars) {
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  return out;
}

struct Term {
  std::vector<int> exps;  // by ranked variable
  Rational coeff;
};

bool grlex_greater(const std::vector<int>& a, const std::vector<int>& b) {
  int da = 0;
  int db = 0;
  for (int x : a) da += x;
  for (int x : b) db += x;
  if (da != db) return da > db;
  return a > b;
}

std::vector<Term> ranked_terms(const MultiPoly& p, const std::vector<std::string>& vars) {
  std::vector<Term> out;
  const auto& own = p.variables();
  for (const auto& [e, c] : p.terms()) {
    Term t{std::vector<int>(vars.size(), 0), c};
    for (std::size_t i = 0; i < own.size(); ++i) {
      auto it = std::find(vars.begin(), vars.end(), own[i]);
      t.exps[static_cast<std::size_t>(it - vars.begin())] = e[i];
    }
    out.push_back(t);
  }
  std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) { return grlex_greater(a.exps, b.exps); });
  return out;
}

std::string monomial(const std::vector<int>& exps, const std::vector<std::string>& vars, bool latex) {
  std::string s;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (exps[i] == 0) continue;
    if (!s.empty()) s += latex ? " " : "*";
    s += var_name(vars[i], latex);
    if (exps[i] != 1) s += latex ? "^{" + std::to_string(exps[i]) + "}" : "^" + std::to_string(exps[i]);
  }
  return s;
}

/// Leading exponent vector under the display ranking.
std::vector<int> display_lead(const MultiPoly& p, const std::vector<std::string>& order) {
  auto vars = ranked(p.occurring_variables(), order);
  auto ts = ranked_terms(p, vars);
  // re-express over the full order so that different factors compare
  std::vector<int> out(order.size() + vars.size(), 0);
  for (std::size_t i = 0; i < vars.size(); ++i) {
    auto it = std::find(order.begin(), order.end(), vars[i]);
    std::size_t slot = it != order.end() ? static_cast<std::size_t>(it - order.begin()) : order.size() + i;
    out[slot] = ts.front().exps[i];
  }
  return out;
}

Rational display_lead_coefficient(const MultiPoly& p, const std::vector<std::string>& order) {
  auto vars = ranked(p.occurring_variables(), order);
  return ranked_terms(p, vars).front().coeff;
}

bool has_top_level_sum(const std::string& s) {
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (depth == 0 && i > 0 && (s[i] == '+' || s[i] == '-')) return true;
  }
  return false;
}

bool is_single_token(const std::string& s) {
  return s.find_first_of("+-*/ ()") == std::string::npos;
}

}  // namespace

std::string display_poly(const MultiPoly& p, const std::vector<std::string>& order, bool latex) {
  if (p.is_zero()) return "0";
  auto vars = ranked(p.occurring_variables(), order);
  auto ts = ranked_terms(p, vars);
  std::stable_partition(ts.begin(), ts.end(), [](const Term& t) { return t.coeff > 0; });
  std::string s;
  bool first = true;
  for (const auto& t : ts) {
    Rational mag = abs(t.coeff);
    if (first) {
      if (t.coeff < 0) s += "-";
    } else {
      s += t.coeff < 0 ? "-" : "+";
    }
    first = false;
    std::string mono = monomial(t.exps, vars, latex);
    if (mono.empty()) {
      s += rational_string(mag, latex);
    } else if (mag == 1) {
      s += mono;
    } else if (mag.get_den() == 1 || latex) {
      s += rational_string(mag, latex) + mono;
    } else {
      s += "(" + to_string(mag) + ")" + mono;
    }
  }
  return s;
}

namespace {

struct Factored {
  std::vector<std::pair<MultiPoly, int>> factors;  // primitive, oriented
  Rational sign{1};
};

/// Splits a primitive polynomial by the hints and the variables, then
/// orients every factor so its display-leading coefficient is positive.
Factored display_factor(MultiPoly p, const std::vector<MultiPoly>& hints, const std::vector<std::string>& order) {
  Factored out;
  std::vector<MultiPoly> candidates;
  for (const auto& v : p.occurring_variables()) candidates.push_back(MultiPoly::variable(v));
  for (const auto& h : hints) {
    if (!h.is_constant() && std::find(candidates.begin(), candidates.end(), h) == candidates.end()) {
      candidates.push_back(h);
    }
  }
  for (const auto& h : candidates) {
    int m = 0;
    while (!p.is_constant()) {
      auto q = divide_exact(p, h);
      if (!q) break;
      p = *q;
      ++m;
    }
    if (m > 0) out.factors.emplace_back(h, m);
  }
  if (!p.is_constant()) {
    out.factors.emplace_back(p, 1);
  } else {
    out.sign *= p.constant_value();
  }
  for (auto& [f, m] : out.factors) {
    if (display_lead_coefficient(f, order) < 0) {
      f = -f;
      if (m % 2 != 0) out.sign = -out.sign;
    }
  }
  std::stable_sort(out.factors.begin(), out.factors.end(), [&](const auto& a, const auto& b) {
    return grlex_greater(display_lead(a.first, order), display_lead(b.first, order));
  });
  return out;
}

std::vector<std::string> factor_parts(const Factored& f, const std::vector<std::string>& order, bool latex,
                                      bool alone) {
  std::vector<std::string> parts;
  for (const auto& [p, m] : f.factors) {
    std::string s = display_poly(p, order, latex);
    bool compound = !is_single_token(s) && p.size() > 1;
    if (compound && (!alone || m > 1)) s = (latex ? "\\left(" : "(") + s + (latex ? "\\right)" : ")");
    if (m > 1) s += latex ? "^{" + std::to_string(m) + "}" : "^" + std::to_string(m);
    parts.push_back(s);
  }
  return parts;
}

std::string join_parts(const std::vector<std::string>& parts, bool latex) {
  std::string s;
  std::string prev;
  for (const auto& p : parts) {
    if (!s.empty()) {
      bool number = prev.find_first_not_of("0123456789") == std::string::npos;
      bool glue = s.back() == ')' || p.front() == '(' || p.front() == '\\' ||
                  (number && std::isalpha(static_cast<unsigned char>(p.front())) != 0);
      s += glue ? "" : (latex ? " " : "*");
    }
    s += p;
    prev = p;
  }
  return s;
}

}  // namespace

std::string display_ratfunc(const RatFunc& r, const std::vector<std::string>& order,
                            const std::vector<MultiPoly>& hints, bool latex) {
  if (r.is_zero()) return "0";
  auto [un, pn] = r.numerator().canonical_split();
  auto [ud, pd] = r.denominator().canonical_split();
  Rational c = un / ud;
  Factored fn = display_factor(pn, hints, order);
  Factored fd = display_factor(pd, hints, order);
  c *= fn.sign / fd.sign;
  Rational mag = abs(c);

  std::vector<std::string> num;
  if (mag.get_num() != 1) num.push_back(to_string(mag.get_num()));
  bool num_alone = fn.factors.size() == 1 && num.empty();
  for (auto& s : factor_parts(fn, order, latex, num_alone)) num.push_back(s);
  std::vector<std::string> den;
  if (mag.get_den() != 1) den.push_back(to_string(mag.get_den()));
  bool den_alone = fd.factors.size() == 1 && den.empty();
  for (auto& s : factor_parts(fd, order, latex, den_alone)) den.push_back(s);

  std::string sign = c < 0 ? "-" : "";
  std::string ns = num.empty() ? "1" : join_parts(num, latex);
  if (den.empty()) return sign + ns;
  std::string ds = join_parts(den, latex);
  if (latex) return sign + "\\frac{" + ns + "}{" + ds + "}";
  if (has_top_level_sum(ns)) ns = "(" + ns + ")";
  if (den.size() > 1 || !is_single_token(ds)) ds = "(" + ds + ")";
  return sign + ns + "/" + ds;
}

std::vector<MultiPoly> display_hints(const Identity& id) {
  std::vector<MultiPoly> out;
  HyperTerm f = id.summand;
  try {
    f = divide_by_rhs(id).summand;
  } catch (const Error&) {
  }
  std::vector<std::string> vars{id.main_var};
  for (const auto& s : id.sums) vars.push_back(s.var);
  auto add = [&](const MultiPoly& p) {
    if (p.is_constant()) return;
    MultiPoly prim = p.primitive();
    if (std::find(out.begin(), out.end(), prim) == out.end()) out.push_back(prim);
  };
  for (const auto& v : vars) {
    FactoredRatio fr;
    try {
      fr = factored_shift_quotient(f, v);
    } catch (const Error&) {
      continue;
    }
    for (const auto& [p, m] : fr.factors) {
      add(p);
      for (const auto& w : vars) {
        for (long h = -2; h <= 2; ++h) {
          if (h != 0) add(p.shifted(w, h));
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------- terms

namespace {

std::string linform_latex(const LinForm& l, const std::vector<std::string>& order) {
  return display_poly(l.to_poly(), order, true);
}

std::string atom_latex(const HyperAtom& a, int e, const std::vector<std::string>& order) {
  std::string body;
  switch (a.kind()) {
    case AtomKind::Factorial: {
      std::string arg = linform_latex(a.first(), order);
      body = (is_single_token(arg) ? arg : "(" + arg + ")") + "!";
      break;
    }
    case AtomKind::Binomial:
      body = "\\binom{" + linform_latex(a.first(), order) + "}{" + linform_latex(a.second(), order) + "}";
      break;
    case AtomKind::Pochhammer:
      body = "\\left(" + linform_latex(a.first(), order) + "\\right)_{" + linform_latex(a.second(), order) + "}";
      break;
    case AtomKind::Power: {
      std::string b = display_poly(a.base(), order, true);
      if (!is_single_token(b)) b = "\\left(" + b + "\\right)";
      return b + "^{" + linform_latex(a.first(), order) + "}";
    }
    case AtomKind::Sign:
      return "(-1)^{" + linform_latex(a.first(), order) + "}";
    case AtomKind::Poly: {
      std::string b = display_poly(a.base(), order, true);
      body = a.base().size() > 1 ? "\\left(" + b + "\\right)" : b;
      break;
    }
  }
  if (e != 1) body += "^{" + std::to_string(e) + "}";
  return body;
}

}  // namespace

std::string display_term(const HyperTerm& t, const std::vector<std::string>& order, bool latex) {
  if (!latex) return t.to_string(order);
  std::vector<std::string> num;
  std::vector<std::string> den;
  Rational mag = abs(t.constant());
  if (mag.get_num() != 1) num.push_back(to_string(mag.get_num()));
  if (mag.get_den() != 1) den.push_back(to_string(mag.get_den()));
  for (const auto& a : t.atoms()) {
    if (a.kind() == AtomKind::Sign) {
      num.push_back(atom_latex(a, 1, order));
    } else if (a.kind() == AtomKind::Power) {
      // denominator only when no part of the exponent is positive
      bool negative = a.first().offset() <= 0;
      bool any = a.first().offset() < 0;
      for (const auto& [v, c] : a.first().coefficients()) {
        negative = negative && c < 0;
        any = true;
      }
      if (negative && any) {
        den.push_back(atom_latex(HyperAtom::power(a.base(), -a.first()), 1, order));
      } else {
        num.push_back(atom_latex(a, 1, order));
      }
    } else if (a.exponent() > 0) {
      num.push_back(atom_latex(a, a.exponent(), order));
    } else {
      den.push_back(atom_latex(a, -a.exponent(), order));
    }
  }
  std::string sign = t.constant() < 0 ? "-" : "";
  std::string ns = num.empty() ? "1" : join_parts(num, true);
  if (den.empty()) return sign + ns;
  return sign + "\\frac{" + ns + "}{" + join_parts(den, true) + "}";
}

std::string display_identity(const Identity& id, bool latex) {
  auto order = id.display_order();
  std::string s;
  for (const auto& r : id.sums) {
    std::string v = var_name(r.var, latex);
    if (latex) {
      s += r.explicit_range() ? "\\sum_{" + v + "=" + linform_latex(*r.lo, order) + "}^{" + linform_latex(*r.hi, order) + "} "
                              : "\\sum_{" + v + "} ";
    } else {
      s += r.explicit_range() ? "sum_{" + r.var + "=" + display_poly(r.lo->to_poly(), order) + ".." +
                                    display_poly(r.hi->to_poly(), order) + "} "
                              : "sum_" + r.var + " ";
    }
  }
  s += display_term(id.summand, order, latex);
  s += " = ";
  if (id.rhs.empty()) return s + "0";
  for (std::size_t i = 0; i < id.rhs.size(); ++i) {
    std::string t = display_term(id.rhs[i], order, latex);
    if (i > 0) {
      if (t.front() == '-') {
        s += " - " + t.substr(1);
        continue;
      }
      s += " + ";
    }
    s += t;
  }
  return s;
}

// ---------------------------------------------------------------- document

namespace {

std::string relation_text(Convention c, const std::string& n, const std::string& k) {
  std::string F1 = "F(" + n + "+1," + k + ")";
  std::string F0 = "F(" + n + "," + k + ")";
  std::string Gp = "G(" + n + "," + k + "+1)";
  std::string Gm = "G(" + n + "," + k + "-1)";
  std::string G0 = "G(" + n + "," + k + ")";
  std::string lhs = F1 + " - " + F0 + " = ";
  switch (c) {
    case Convention::Forward: return lhs + Gp + " - " + G0;
    case Convention::ForwardNegated: return lhs + G0 + " - " + Gp;
    case Convention::Backward: return lhs + G0 + " - " + Gm;
    case Convention::BackwardNegated: return lhs + Gm + " - " + G0;
  }
  return lhs;
}

std::string point_text(const Point& p, const std::vector<std::string>& order) {
  std::vector<std::string> keys;
  for (const auto& [v, x] : p) keys.push_back(v);
  keys = ranked(keys, order);
  std::string s;
  for (const auto& v : keys) s += (s.empty() ? "" : ", ") + v + " = " + to_string(p.at(v));
  return s;
}

class Writer {
 public:
  explicit Writer(bool latex) : latex_(latex) {}

  void heading(const std::string& h) {
    if (latex_) {
      os_ << "\\noindent\\textbf{" << h << ".} ";
    } else {
      os_ << h << ". ";
    }
  }
  void display(const std::string& math) {
    if (latex_) {
      os_ << "\n\\[ " << math << " \\]\n";
    } else {
      os_ << "\n\n    " << math << "\n\n";
    }
  }
  void text(const std::string& t) { os_ << t; }
  void check(bool ok, const std::string& what) {
    if (latex_) {
      os_ << "  \\item[" << (ok ? "\\checkmark" : "$\\times$") << "] " << what << "\n";
    } else {
      os_ << "  [" << (ok ? "ok" : "FAILED") << "] " << what << "\n";
    }
  }
  /// Check that was never run.
  void skipped(const std::string& what) {
    if (latex_) {
      os_ << "  \\item[--] " << what << " (not checked)\n";
    } else {
      os_ << "  [--] " << what << " (not checked)\n";
    }
  }
  void begin_checks() {
    if (latex_) os_ << "\\begin{itemize}\n";
  }
  void end_checks() {
    if (latex_) os_ << "\\end{itemize}\n";
  }
  void verbatim(const std::string& t) {
    if (latex_) {
      os_ << "\\begin{verbatim}\n" << t << "\n\\end{verbatim}\n";
    } else {
      os_ << t << "\n";
    }
  }
  void blank() { os_ << "\n"; }
  std::string str() const { return os_.str(); }
  bool latex() const { return latex_; }

 private:
  bool latex_;
  std::ostringstream os_;
};

/// A Pochhammer symbol whose base moves with the main variable and has a
/// fractional offset, as in (3/2+n)_k.
bool has_fractional_pochhammer(const Identity& id) {
  auto check = [&](const HyperTerm& t) {
    for (const auto& a : t.atoms()) {
      if (a.kind() == AtomKind::Pochhammer && a.first().depends_on(id.main_var) && !a.first().has_integer_offset()) {
        return true;
      }
    }
    return false;
  };
  if (check(id.summand)) return true;
  return std::any_of(id.rhs.begin(), id.rhs.end(), check);
}

std::string math(const std::string& s, bool latex) { return latex ? "$" + s + "$" : s; }

}  // namespace

std::string emit_proof_document(const CertReport& report, const Identity& id, const CertificateRecord& rec,
                                const EmitOptions& options) {
  bool latex = options.format == DocFormat::Latex;
  auto order = id.display_order();
  auto hints = display_hints(id);
  const std::string& n = id.main_var;
  std::vector<std::string> ks = id.sum_vars();
  std::string k = ks.empty() ? "k" : ks.front();
  std::string kvec;
  for (const auto& v : ks) kvec += (kvec.empty() ? "" : ",") + v;
  Writer w(latex);

  if (latex) {
    w.text("\\documentclass{article}\n\\usepackage{amsmath,amssymb}\n\\begin{document}\n");
    if (!options.title.empty()) w.text("\\section*{" + options.title + "}\n");
  } else if (!options.title.empty()) {
    w.text(options.title + "\n" + std::string(options.title.size(), '=') + "\n\n");
  }

  long n0 = report.base.n0;
  std::string a_def = "a(" + n + ") = sum_{" + kvec + "} F(" + n + "," + kvec + ")";

  if (report.verdict == Verdict::Proved) {
    w.heading("Theorem");
    w.text("For every integer " + math(n + (latex ? " \\geq " : " >= ") + std::to_string(n0), latex) + ",");
    w.display(display_identity(id, latex));
    w.heading("Proof");
    if (rec.kind == CertificateRecord::Kind::WZ) {
      std::string line = display_ratfunc(rec.certificates.front(), order, hints, latex);
      w.text(math(line, latex));
      w.blank();
      w.blank();
      w.text("Let F(" + n + "," + k + ") be the summand divided by the right-hand side, R(" + n + "," + k +
             ") the rational function above, and G = R F.\n");
      w.begin_checks();
      w.check(report.rational_identity_holds,
              relation_text(report.convention, n, k) + ", checked as an identity of rational functions (convention: " +
                  convention_name(report.convention) + ").");
    } else if (rec.kind == CertificateRecord::Kind::Recurrence) {
      Recurrence r = rec.as_recurrence();
      std::string op;
      for (int j = 0; j <= r.order(); ++j) {
        std::string c = display_poly(r.coefficients[static_cast<std::size_t>(j)], order, latex);
        op += (j ? " + " : "") + std::string("(") + c + ") F(" + n + (j ? "+" + std::to_string(j) : "") + "," + k + ")";
      }
      w.text("The summand F satisfies " + math(op + " = G(" + n + "," + k + "+1) - G(" + n + "," + k + ")", latex) +
             " with G = R F and R = " + math(display_ratfunc(r.certificate, order, hints, latex), latex) + ".\n");
      w.begin_checks();
      w.check(report.rational_identity_holds, "the recurrence relation, checked as an identity of rational functions.");
    } else {
      for (std::size_t i = 0; i < rec.certificates.size(); ++i) {
        std::string label = "R_" + std::to_string(i + 1);
        w.text(math(label + " = " + display_ratfunc(rec.certificates[i], order, hints, latex), latex) +
               (i + 1 < rec.certificates.size() ? (latex ? ", " : "\n       ") : "\n"));
      }
      w.blank();
      w.text("Let F be the summand divided by the right-hand side and G_i = R_i F.\n");
      w.begin_checks();
      w.check(report.rational_identity_holds,
              "F(" + n + "+1) - F(" + n + ") = sum_i [G_i(" + "k_i+1) - G_i], checked as an identity of rational "
              "functions.");
    }
    w.check(report.boundary.ok, "boundary: " + report.boundary.evidence + ".");
    std::string base = "a(" + std::to_string(n0) + ") = " + to_string(report.base.value);
    w.check(report.base.ok, base + ", where " + a_def + ".");
    w.end_checks();
    if (rec.kind == CertificateRecord::Kind::Recurrence) {
      w.text("Both a(" + n + ") and the constant 1 satisfy the recurrence and agree on the initial values, so a(" + n +
             ") = 1 for all " + n + " >= " + std::to_string(n0) + ".\n");
    } else {
      w.text("Summing over " + kvec + ", the right-hand side telescopes to zero, so a(" + n +
             "+1) = a(" + n + "). Since " + base + ", a(" + n + ") = 1 for all " + n + " >= " + std::to_string(n0) +
             ".\n");
    }
    if (!id.params.empty()) {
      std::string ps;
      for (const auto& p : id.params) ps += (ps.empty() ? "" : ", ") + p;
      w.text("Remark. " + ps + " are treated as indeterminates throughout.\n");
    }
    if (has_fractional_pochhammer(id)) {
      w.text("Remark. The statement holds for integer " + n + " >= " + std::to_string(n0) +
             ". Specializing " + n + " to a non-integer value (e.g. " + n +
             " = -1/2) rests on Carlson's theorem, which is cited here and not checked.\n");
    }
    for (const auto& note : report.notes) w.text("Note. " + note + "\n");
    w.blank();
    w.text("Certificate (machine form):\n");
    w.verbatim(record_to_json(rec, false));
  } else if (report.verdict == Verdict::Refuted) {
    w.heading("Refutation");
    w.text("The certificate does not establish");
    w.display(display_identity(id, latex));
    if (report.counterexample) {
      w.text("Counterexample at " + point_text(*report.counterexample, order) + ".\n");
    }
    if (!report.counterexample && report.base.computed && !report.base.ok) {
      w.text("At " + n + " = " + std::to_string(report.base.n0) + " the normalized sum is " +
             to_string(report.base.value) + ", not " + to_string(report.base.expected) + ".\n");
    }
    if (!report.rational_identity_holds && !report.residual.is_zero()) {
      w.text("Residual numerator: " + math(display_poly(report.residual, order, latex), latex) + "\n");
    }
    for (const auto& note : report.notes) w.text("Note. " + note + "\n");
    if (!rec.certificates.empty()) {
      w.blank();
      w.text("Certificate (machine form):\n");
      w.verbatim(record_to_json(rec, false));
    }
  } else {
    w.heading("Diagnostic (not a proof)");
    w.text("No verdict for");
    w.display(display_identity(id, latex));
    w.begin_checks();
    if (report.rational_identity_holds || !rec.certificates.empty()) {
      w.check(report.rational_identity_holds, "rational identity");
    } else {
      w.skipped("rational identity");
    }
    if (report.boundary.evidence.empty()) {
      w.skipped("boundary");
    } else {
      w.check(report.boundary.ok, "boundary: " + report.boundary.evidence);
    }
    if (report.base.computed) {
      w.check(report.base.ok, "base case a(" + std::to_string(report.base.n0) + ") = " + to_string(report.base.value));
    } else {
      w.skipped("base case");
    }
    w.end_checks();
    for (const auto& note : report.notes) w.text("Note. " + note + "\n");
  }

  if (!options.reproducible) {
    w.blank();
    w.text(std::string(latex ? "\\noindent " : "") + "-- wzcert " + kEngineVersion + "\n");
  }
  if (latex) w.text("\\end{document}\n");
  return w.str();
}

}  // namespace wzcert
