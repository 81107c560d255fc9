#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "random_support.hpp"
#include "wzcert/document.hpp"
#include "wzcert/driver.hpp"
#include "wzcert/dsl.hpp"

using namespace wzcert;

namespace {

std::string data(const std::string& name) {
  std::ifstream in(std::string(WZCERT_TEST_DATA) + "/" + name, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "missing test data " << name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

EmitOptions reproducible_text() {
  EmitOptions e;
  e.reproducible = true;
  return e;
}

/// The compact JSON line following "Certificate (machine form):".
std::string machine_form(const std::string& doc) {
  auto at = doc.find("Certificate (machine form):\n");
  REQUIRE(at != std::string::npos);
  auto start = at + std::string("Certificate (machine form):\n").size();
  return doc.substr(start, doc.find('\n', start) - start);
}

}  // namespace

TEST_CASE("compact polynomial display") {
  MultiPoly n = MultiPoly::variable("n");
  MultiPoly k = MultiPoly::variable("k");
  std::vector<std::string> order{"n", "k"};
  CHECK(display_poly(n + 1 - k, order) == "n+1-k");
  CHECK(display_poly(4 * k + 1, order) == "4k+1");
  CHECK(display_poly(k * k * n - 3, order) == "n*k^2-3");
  CHECK(display_poly(MultiPoly(make_rational(1, 2)) * k - 1, order) == "(1/2)k-1");
  CHECK(display_poly(MultiPoly::variable("k1") * 2, {"k1"}, true) == "2k_{1}");
  CHECK(display_poly(MultiPoly(), order) == "0");
}

TEST_CASE("certificate lines factor over the summand's linear factors") {
  Identity bin = load_identity(data("binomial.wz"));
  MultiPoly n = MultiPoly::variable("n");
  MultiPoly k = MultiPoly::variable("k");
  RatFunc r(k, 2 * (k - n - 1));
  CHECK(display_ratfunc(r, bin.display_order(), display_hints(bin)) == "-k/(2(n+1-k))");
  CHECK(display_ratfunc(r, bin.display_order(), display_hints(bin), true) == "-\\frac{k}{2\\left(n+1-k\\right)}");

  Identity ram = load_identity(data("ramanujan.wz"));
  RatFunc rr(-2 * k * k, (n - k + 1) * (4 * k + 1));
  CHECK(display_ratfunc(rr, ram.display_order(), display_hints(ram)) == "-2k^2/((n+1-k)(4k+1))");
  CHECK(display_ratfunc(RatFunc(3), {"n"}) == "3");
  CHECK(display_ratfunc(RatFunc(n + 1, MultiPoly(4)), {"n"}) == "(n+1)/4");
}

TEST_CASE("property: displayed certificates read back to the same function") {
  std::vector<std::string> vars{"n", "k"};
  for (int trial = 0; trial < 100; ++trial) {
    RatFunc r(testing::random_nonzero_poly(vars, 2, 3), testing::random_nonzero_poly(vars, 2, 3));
    std::string shown = display_ratfunc(r, vars);
    CHECK(shown == display_ratfunc(r, vars));
    Identity id = load_identity("sum k = 0 .. 0: " + shown + " == 1");
    for (int i = 0; i < 5; ++i) {
      Point p{{"n", testing::uniform(-30, 30)}, {"k", testing::uniform(-30, 30)}};
      if (r.denominator().evaluate(p) == 0) continue;
      CHECK_MESSAGE(eval_exact(id.summand, p) == r.evaluate(p), shown);
    }
  }
}

TEST_CASE("binomial proof document matches the golden file") {
  ProveOutcome o = prove_source(data("binomial.wz"));
  REQUIRE(o.report.verdict == Verdict::Proved);
  std::string doc = outcome_document(o, reproducible_text());
  CHECK(doc == data("binomial_proof.golden.txt"));
  CHECK(doc.find("Proof. -k/(2(n+1-k))\n") != std::string::npos);
  CHECK(doc.find("a(0) = 1") != std::string::npos);
  CHECK(doc.find("wzcert 0.1.0") == std::string::npos);
  // byte-identical on a second run; metadata only when asked for
  CHECK(outcome_document(prove_source(data("binomial.wz")), reproducible_text()) == doc);
  CHECK(outcome_document(o, {}).find("-- wzcert 0.1.0") != std::string::npos);
}

TEST_CASE("LaTeX layout") {
  ProveOutcome o = prove_source(data("ramanujan.wz"));
  REQUIRE(o.report.verdict == Verdict::Proved);
  EmitOptions e;
  e.format = DocFormat::Latex;
  e.reproducible = true;
  std::string doc = outcome_document(o, e);
  CHECK(doc.find("\\begin{document}") != std::string::npos);
  CHECK(doc.find("\\textbf{Theorem.}") != std::string::npos);
  CHECK(doc.find("\\textbf{Proof.} $-\\frac{2k^{2}}{\\left(n+1-k\\right)\\left(4k+1\\right)}$") != std::string::npos);
  CHECK(doc.find("Carlson") != std::string::npos);
  CHECK(doc.find("\\end{document}") != std::string::npos);
}

TEST_CASE("proved documents re-verify from their machine form across the corpus") {
  int proved = 0;
  for (const auto& entry : std::filesystem::directory_iterator(WZCERT_TEST_DATA)) {
    if (entry.path().extension() != ".wz") continue;
    std::string src = data(entry.path().filename().string());
    ProveOutcome o;
    try {
      o = prove_source(src);
    } catch (const ParseError&) {
      continue;
    }
    if (o.report.verdict != Verdict::Proved) continue;
    ++proved;
    std::string doc = outcome_document(o, reproducible_text());
    CertificateRecord rec = record_from_json(machine_form(doc));
    CHECK_MESSAGE(verify_source(src, rec).report.verdict == Verdict::Proved, entry.path().string());
  }
  CHECK(proved >= 6);
}

TEST_CASE("refuted and inconclusive documents") {
  ProveOutcome bad = prove_source(data("false_base.wz"));
  REQUIRE(bad.report.verdict == Verdict::Refuted);
  std::string doc = outcome_document(bad, reproducible_text());
  CHECK(doc.find("Refutation.") == 0);
  CHECK(doc.find("Counterexample at n = 1") != std::string::npos);

  ProveOutcome none = prove_source("sum k: binomial(n,k) * (k+1) == n*2^(n-1) + 2^n");
  REQUIRE(none.report.verdict == Verdict::Inconclusive);
  std::string diag = outcome_document(none, reproducible_text());
  CHECK(diag.find("Diagnostic (not a proof)") == 0);
  CHECK(diag.find("Theorem") == std::string::npos);
  CHECK(diag.find("machine form") == std::string::npos);
}
