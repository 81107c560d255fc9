// Acceptance run: one PASS/FAIL line per criterion, with wall time.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "random_poly.hpp"
#include "wzcert/driver.hpp"
#include "wzcert/dsl.hpp"
#include "wzcert/errors.hpp"
#include "wzcert/multiwz.hpp"
#include "wzcert/oracle.hpp"
#include "wzcert/telescoper.hpp"

using namespace wzcert;

namespace {

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Failure(what);
}

std::string corpus_dir = WZCERT_TEST_DATA;

std::string read(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string corpus(const std::string& name) { return read(corpus_dir + "/" + name); }

LinForm V(const std::string& v) { return LinForm::variable(v); }
MultiPoly P(const std::string& v) { return MultiPoly::variable(v); }

// ---------------------------------------------------------------- criteria

std::string binomial_theorem() {
  ProveOutcome o = prove_source(corpus("binomial.wz"));
  require(o.report.verdict == Verdict::Proved, "not proved");
  const RatFunc& r = o.record->certificates.front();
  HyperTerm f = divide_by_rhs(o.id).summand;
  require(verify_wz_rational(f, r, o.report.convention).holds, "certificate fails the symbolic WZ check");
  for (long n = 0; n <= 20; ++n) require(identity_defect(o.id, {{"n", n}}) == 0, "oracle disagrees at n=" + std::to_string(n));
  return "certificate " + display_ratfunc(r, o.id.display_order(), display_hints(o.id)) + ", oracle n=0..20";
}

std::string ramanujan() {
  std::string src = corpus("ramanujan.wz");
  MultiPoly n = P("n");
  MultiPoly k = P("k");
  RatFunc printed(-2 * k * k, (n - k + 1) * (4 * k + 1));
  CertificateRecord rec;
  rec.identity_hash = identity_hash(parse_identity(src));
  rec.convention = Convention::Forward;
  rec.certificates = {printed};
  ProveOutcome v = verify_source(src, rec);
  require(v.report.verdict == Verdict::Proved, "printed certificate not accepted under the forward convention");
  ProveOutcome p = prove_source(src);
  require(p.report.verdict == Verdict::Proved, "prove failed");
  require(p.record->kind == CertificateRecord::Kind::WZ, "prove did not find a WZ certificate");
  require(p.record->convention == Convention::Forward && p.record->certificates.front() == printed,
          "found certificate differs from the printed one");
  for (long m = 0; m <= 15; ++m) require(identity_defect(p.id, {{"n", m}}) == 0, "oracle disagrees at n=" + std::to_string(m));
  return "printed certificate verified (forward), found the same one, oracle n=0..15";
}

std::string ahlgren_ono() {
  for (long n = 1; n <= 50; ++n) require(ahlgren_ono_eval(n) == 0, "nonzero at n=" + std::to_string(n));
  return "ahlgren_ono_eval(n) = 0 for n=1..50";
}

std::string beukers() {
  QSeries eta = eta_product(20);
  const long prefix[] = {0, 1, 0, -4, 0, -2, 0, 24};
  for (long i = 0; i <= 7; ++i) require(eta[i] == prefix[i], "eta-product coefficient of q^" + std::to_string(i));
  std::string out = "prefix q-4q^3-2q^5+24q^7; ";
  for (long p : {3L, 5L, 7L, 11L, 13L}) {
    BeukersReport r = beukers_check(p, 20);
    require(r.congruent, "not congruent at p=" + std::to_string(p));
    out += "p=" + std::to_string(p) + " ";
  }
  return out + "congruent mod p^2 at N=20";
}

std::string dyson() {
  for (int r = 1; r <= 3; ++r) {
    for (int a = 0; a <= 2; ++a) {
      Integer expect = factorial(static_cast<long>(r) * a);
      Integer fa = factorial(a);
      for (int i = 0; i < r; ++i) expect /= fa;
      require(constant_term(r, a) == Rational(expect), "CT(" + std::to_string(r) + "," + std::to_string(a) + ")");
    }
  }
  return "CT(r,a) = (ra)!/a!^r on {1,2,3}x{0,1,2}; CT(3,2) = " + to_string(constant_term(3, 2));
}

std::string trinomial() {
  Identity id = load_identity(corpus("trinomial.wz"));
  HyperTerm f = divide_by_rhs(id).summand;
  auto cert = find_multi_ansatz(f, 3, "n", {"k1", "k2"});
  require(cert.has_value(), "no certificate with degree bound 3");
  require(cert->rs.size() == 2, "expected two certificates");
  require(verify_multi(f, cert->rs, "n", {"k1", "k2"}).holds, "verify_multi fails");
  for (auto xyz : {std::array<long, 3>{1, 2, 3}, std::array<long, 3>{1, 1, 1}}) {
    for (long n = 0; n <= 8; ++n) {
      Point at{{"n", n}, {"x", xyz[0]}, {"y", xyz[1]}, {"z", xyz[2]}};
      require(exact_sum(id.summand, id.sums, at) == 1, "multi-sum != 1 at n=" + std::to_string(n));
    }
  }
  return "R1 = " + display_ratfunc(cert->rs[0], id.display_order(), display_hints(id)) +
         ", sums = 1 for n=0..8 at (1,2,3), (1,1,1)";
}

std::string apery() {
  HyperTerm f(1, {HyperAtom::binomial(V("n"), V("k"), 2), HyperAtom::binomial(V("n") + V("k"), V("k"), 2)});
  Recurrence rec = zeilberger(f, 4);
  require(rec.order() == 2, "order " + std::to_string(rec.order()));
  std::vector<Integer> a;
  for (long m = 0; m <= 50; ++m) a.push_back(apery_number(m));
  require(a[1] == 5 && a[2] == 73, "A(1), A(2)");
  for (long m = 0; m + 2 <= 50; ++m) {
    Rational s = 0;
    for (int j = 0; j <= 2; ++j) {
      s += rec.coefficients[static_cast<std::size_t>(j)].evaluate({{"n", m}}) * Rational(a[static_cast<std::size_t>(m + j)]);
    }
    require(s == 0, "recurrence fails at n=" + std::to_string(m));
  }
  return "order 2, A(n) n<=50 satisfies it, A(1)=5, A(2)=73";
}

std::string property_suites() {
  using testing::uniform;
  // Gosper completeness
  int recovered = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<HyperAtom> atoms;
    if (uniform(0, 1) != 0) atoms.push_back(HyperAtom::factorial(V("k") + LinForm(uniform(0, 2)), uniform(0, 1) ? 1 : -1));
    if (uniform(0, 1) != 0) atoms.push_back(HyperAtom::binomial(V("n"), V("k")));
    if (uniform(0, 1) != 0) atoms.push_back(HyperAtom::power(MultiPoly(uniform(2, 3)), V("k")));
    if (uniform(0, 1) != 0) atoms.push_back(HyperAtom::pochhammer(make_rational(uniform(1, 3), 2), V("k")));
    HyperTerm t(1, atoms);
    MultiPoly den(1);
    if (uniform(0, 1) != 0) den = P("k") + MultiPoly(uniform(1, 3));
    RatFunc r(testing::random_nonzero_poly({"k", "n"}, 2, 2), den);
    RatFunc q = r.shifted("k", 1) * shift_quotient(t, "k") - r;
    if (q.is_zero()) {
      ++recovered;
      continue;
    }
    HyperTerm s = absorb(t, q);
    auto found = gosper(s, "k");
    if (found && found->shifted("k", 1) * shift_quotient(s, "k") - *found == RatFunc(1)) ++recovered;
  }
  require(recovered == 100, "Gosper recovered " + std::to_string(recovered) + "/100");

  // algebra properties
  const std::vector<std::string> vars = {"k", "n", "x"};
  for (int trial = 0; trial < 500; ++trial) {
    MultiPoly a = testing::random_poly(vars, 2, 3);
    MultiPoly b = testing::random_poly(vars, 2, 3);
    MultiPoly c = testing::random_nonzero_poly(vars, 2, 3);
    MultiPoly d = testing::random_nonzero_poly(vars, 2, 3);
    require((a + b) * c == a * c + b * c && a * (b * c) == (a * b) * c, "ring axioms");
    MultiPoly g = gcd(a * c, d * c);
    require(divide_exact(a * c, g) && divide_exact(d * c, g) && divide_exact(g, c.primitive()), "gcd");
    RatFunc lhs = rat_normalize(a * c, d * c);
    require(lhs == rat_normalize(a, d), "normalization");
    require(rat_normalize(lhs.numerator(), lhs.denominator()) == lhs, "normalization idempotent");
  }
  for (long n = 1; n <= 8; ++n) require(parable_check(n), "parable n=" + std::to_string(n));
  require(sqrt2_invariant_symbolic(), "sqrt2 invariant");
  return "Gosper 100/100, algebra 500/500, parable n=1..8, sqrt2 invariant symbolic";
}

std::string soundness_gate() {
  static const long kPrimes[] = {2, 3, 5, 7, 11, 13};
  int files = 0;
  int proved = 0;
  for (const auto& entry : std::filesystem::directory_iterator(corpus_dir)) {
    if (entry.path().extension() != ".wz") continue;
    ++files;
    std::string src = read(entry.path().string());
    ProveOutcome o;
    try {
      o = prove_source(src);
    } catch (const ParseError&) {
      continue;
    }
    if (o.report.verdict != Verdict::Proved) continue;
    ++proved;
    for (int sample = 0; sample < (o.id.params.empty() ? 1 : 3); ++sample) {
      Point at;
      for (std::size_t i = 0; i < o.id.params.size(); ++i) at[o.id.params[i]] = kPrimes[(i + sample) % 6];
      for (long n = 0; n <= 20; ++n) {
        at["n"] = n;
        Rational d;
        try {
          d = identity_defect(o.id, at);
        } catch (const PoleError&) {
          continue;  // the identity does not speak about poles of its right-hand side
        }
        require(d == 0, entry.path().filename().string() + " proved but false at n=" + std::to_string(n));
      }
    }
  }
  require(proved > 0, "nothing proved");
  return std::to_string(proved) + " of " + std::to_string(files) + " corpus identities proved, 0 oracle disagreements for n<=20";
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) corpus_dir = argv[1];
  struct Criterion {
    int number;
    const char* name;
    double limit;
    std::function<std::string()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "binomial theorem", 1.0, binomial_theorem},
      {2, "Ramanujan generalization", 2.0, ramanujan},
      {3, "Ahlgren-Ekhad-Ono identity", 2.0, ahlgren_ono},
      {4, "Beukers congruence", 5.0, beukers},
      {5, "Dyson constant term", 30.0, dyson},
      {6, "trinomial theorem", 60.0, trinomial},
      {7, "Zeilberger on the Apery summand", 30.0, apery},
      {8, "property suites", 60.0, property_suites},
      {9, "soundness gate", 0.0, soundness_gate},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
      detail = c.run();
    } catch (const std::exception& e) {
      ok = false;
      detail = e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (ok && c.limit > 0 && secs >= c.limit) {
      ok = false;
      detail += "; over the time limit";
    }
    failed += ok ? 0 : 1;
    std::ostringstream limit;
    if (c.limit > 0) limit << ", limit " << c.limit << " s";
    std::cout << (ok ? "PASS" : "FAIL") << " [" << c.number << "] " << c.name << ": " << detail << " ("
              << std::fixed << std::setprecision(3) << secs << " s" << limit.str() << ")" << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
