#include <doctest.h>

#include <numeric>
#include <tuple>

#include "wzcert/budget.hpp"
#include "wzcert/errors.hpp"
#include "wzcert/multiwz.hpp"
#include "wzcert/telescoper.hpp"

using namespace wzcert;

namespace {

LinForm V(const std::string& name) { return LinForm::variable(name); }
MultiPoly P(const std::string& name) { return MultiPoly::variable(name); }
MultiPoly C(long c) { return MultiPoly(c); }

HyperTerm trinomial() {
  return HyperTerm(1, {HyperAtom::factorial(V("n")), HyperAtom::factorial(V("k1"), -1),
                       HyperAtom::factorial(V("k2"), -1), HyperAtom::factorial(V("n") - V("k1") - V("k2"), -1),
                       HyperAtom::power(P("x"), V("k1")), HyperAtom::power(P("y"), V("k2")),
                       HyperAtom::power(P("z"), V("n") - V("k1") - V("k2")),
                       HyperAtom::power(P("x") + P("y") + P("z"), -V("n"))});
}

Identity trinomial_identity() {
  Identity id;
  id.summand = trinomial();
  id.rhs = {HyperTerm(1)};
  id.sums = {SumRange{"k1", {}, {}}, SumRange{"k2", {}, {}}};
  id.params = {"x", "y", "z"};
  return id;
}

const std::vector<std::string> kTwo{"k1", "k2"};

}  // namespace

TEST_CASE("trinomial: ansatz certificate and exact sums") {
  HyperTerm f = trinomial();
  auto cert = find_multi_ansatz(f, 3, "n", kTwo);
  REQUIRE(cert.has_value());
  REQUIRE(cert->rs.size() == 2);
  CHECK(verify_multi(f, cert->rs, "n", kTwo).holds);
  for (auto [x, y, z] : {std::tuple{1, 2, 3}, std::tuple{1, 1, 1}}) {
    for (long n = 0; n <= 8; ++n) {
      Point at{{"n", n}, {"x", x}, {"y", y}, {"z", z}};
      auto box = support_box(f, kTwo, at);
      REQUIRE(box.has_value());
      CHECK((*box)[0] == std::pair<long, long>{0, n});
      auto s = box_sum(f, kTwo, at, *box);
      REQUIRE(s.has_value());
      CHECK(*s == 1);
    }
  }
  // n = 2 at (1,1,1): nine terms over nine
  Point at{{"n", 2}, {"x", 1}, {"y", 1}, {"z", 1}};
  auto s = box_sum(f * HyperTerm(9), kTwo, at, *support_box(f, kTwo, at));
  CHECK(*s == 9);
}

TEST_CASE("trinomial: degree bound 0 has no certificate") {
  CHECK_FALSE(find_multi_ansatz(trinomial(), 0, "n", kTwo).has_value());
}

TEST_CASE("certify_multi on the trinomial theorem") {
  auto cert = find_multi_ansatz(trinomial(), 2, "n", kTwo);
  REQUIRE(cert.has_value());
  CertReport rep = certify_multi(trinomial_identity(), *cert);
  INFO(rep.boundary.evidence);
  CHECK(rep.verdict == Verdict::Proved);
  CHECK(rep.base.ok);

  // corrupted certificate: refuted
  MultiCert bad = *cert;
  bad.rs[0] = bad.rs[0] + RatFunc(1);
  CertReport rb = certify_multi(trinomial_identity(), bad);
  CHECK(rb.verdict == Verdict::Refuted);
  CHECK_FALSE(rb.residual.is_zero());

  // a wrong right-hand side fails the base case
  Identity wrong = trinomial_identity();
  wrong.rhs = {HyperTerm(2)};
  CHECK(certify_multi(wrong, *cert).verdict == Verdict::Refuted);
}

TEST_CASE("verify_multi: single sum agrees with the WZ check") {
  HyperTerm f = HyperTerm(1, {HyperAtom::binomial(V("n"), V("k")), HyperAtom::power(C(2), -V("n"))});
  RatFunc r(-P("k"), C(2) * (P("n") + C(1) - P("k")));
  CHECK(verify_multi(f, {r}, "n", {"k"}).holds == verify_wz_rational(f, r, Convention::Forward).holds);
  CHECK(verify_multi(f, {r}, "n", {"k"}).holds);
  auto found = find_multi_ansatz(f, 1, "n", {"k"});
  REQUIRE(found.has_value());
  CHECK(found->rs[0] == *wz_certificate_find(f));

  RationalCheck zero = verify_multi(f, {RatFunc()}, "n", {"k"});
  CHECK_FALSE(zero.holds);
  CHECK_FALSE(zero.residual.is_zero());
}

TEST_CASE("property: verified multi-certificates give constant sums") {
  HyperTerm f = trinomial();
  auto cert = find_multi_ansatz(f, 2, "n", kTwo);
  REQUIRE(cert.has_value());
  for (auto [x, y, z] : {std::tuple{2, 5, 7}, std::tuple{1, 3, 1}}) {
    for (long n = 0; n <= 6; ++n) {
      Point at{{"n", n}, {"x", x}, {"y", y}, {"z", z}};
      CHECK(*box_sum(f, kTwo, at, *support_box(f, kTwo, at)) == 1);
    }
  }
  // with the parameters left symbolic the sum at n = 0 is still exact
  Point at0{{"n", 0}};
  CHECK(*box_sum(f, kTwo, at0, *support_box(f, kTwo, at0)) == 1);
  Point at1{{"n", 1}};
  CHECK_FALSE(box_sum(f, kTwo, at1, *support_box(f, kTwo, at1)).has_value());
}

TEST_CASE("Dyson constant term") {
  LaurentPoly p = dyson_product(2, 1);
  LaurentPoly expect(2);
  expect.add({0, 0}, 2);
  expect.add({1, -1}, -1);
  expect.add({-1, 1}, -1);
  CHECK(p == expect);
  CHECK(p.to_string() == "2 - z2/z1 - z1/z2");
  for (int r = 1; r <= 3; ++r) {
    for (int a = 0; a <= 2; ++a) {
      Rational want = Rational(factorial(r * a)) / power(Rational(factorial(a)), r);
      CHECK(constant_term(r, a) == want);
      CHECK(dyson_product(r, a).constant_term() == want);
    }
  }
  CHECK(constant_term(3, 1) == 6);
  CHECK(constant_term(1, 5) == 1);
  CHECK(constant_term(4, 2) == 2520);
}

TEST_CASE("property: Dyson coefficients are symmetric under swapping variables") {
  LaurentPoly p = dyson_product(3, 2);
  for (const auto& [e, c] : p.terms()) {
    CHECK(p.coefficient({e[1], e[0], e[2]}) == c);
    CHECK(p.coefficient({e[0], e[2], e[1]}) == c);
    CHECK(std::accumulate(e.begin(), e.end(), 0) == 0);
  }
}

TEST_CASE("constant term respects the budget") {
  Budget b(100);
  BudgetScope scope(b);
  CHECK_THROWS_AS(constant_term(5, 3), BudgetExceeded);
}
