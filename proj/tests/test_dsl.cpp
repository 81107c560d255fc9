#include <doctest.h>

#include "random_support.hpp"
#include "wzcert/dsl.hpp"
#include "wzcert/errors.hpp"

using namespace wzcert;

namespace {

const char* kBinomial = "sum k: binomial(n,k) / 2^n == 1";
const char* kRamanujan =
    "sum k: (-1)^k * (4k+1) * poch(1/2,k)^2 * poch(-n,k) / (factorial(k)^2 * poch(3/2+n,k)) == "
    "poch(3/2,n)/factorial(n)";
const char* kTrinomial =
    "param x, y, z;\n"
    "sum k1 sum k2 : factorial(n) / (factorial(k1) * factorial(k2) * factorial(n-k1-k2))\n"
    "  * x^k1 * y^k2 * z^(n-k1-k2) / (x+y+z)^n == 1";

ParseError error_of(const std::string& src) {
  try {
    load_identity(src);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("expected a parse error for: " << src);
  return ParseError("", 0, 0);
}

}  // namespace

TEST_CASE("parse and lower the binomial identity") {
  IdentityAst ast = parse_identity(kBinomial);
  CHECK(parse_identity(print_identity(ast)) == ast);
  Identity id = lower_identity(ast);
  REQUIRE(id.sums.size() == 1);
  CHECK(id.sums[0].var == "k");
  CHECK_FALSE(id.sums[0].explicit_range());
  CHECK(id.summand.to_string(id.display_order()) == "binomial(n, k)/2^n");
  REQUIRE(id.rhs.size() == 1);
  CHECK(id.rhs[0] == HyperTerm(1));
}

TEST_CASE("Ramanujan identity round-trips and evaluates") {
  IdentityAst ast = parse_identity(kRamanujan);
  CHECK(parse_identity(print_identity(ast)) == ast);
  Identity id = lower_identity(ast);
  Rational lhs = 0;
  for (long k = 0; k <= 1; ++k) lhs += eval_exact(id.summand, {{"n", 1}, {"k", k}});
  CHECK(lhs == make_rational(3, 2));
  CHECK(eval_exact(id.rhs[0], {{"n", 1}}) == make_rational(3, 2));
}

TEST_CASE("trinomial with parameters") {
  Identity id = load_identity(kTrinomial);
  CHECK(id.params == std::vector<std::string>{"x", "y", "z"});
  CHECK(id.sum_vars() == std::vector<std::string>{"k1", "k2"});
  Rational s = 0;
  for (long a = 0; a <= 2; ++a) {
    for (long b = 0; a + b <= 2; ++b) {
      s += eval_exact(id.summand, {{"n", 2}, {"k1", a}, {"k2", b}, {"x", 1}, {"y", 1}, {"z", 1}});
    }
  }
  CHECK(s == 1);
}

TEST_CASE("explicit ranges, juxtaposition, comments and sums on the right") {
  Identity id = load_identity("# comment\nsum k = 0 .. n: 2k == n(n+1)  # trailing\n");
  REQUIRE(id.sums[0].explicit_range());
  CHECK(*id.sums[0].hi == LinForm::variable("n"));
  CHECK(id.rhs.size() == 1);
  Identity two = load_identity("sum k: binomial(n,k) == 2^n + 0*n - factorial(n)/factorial(n)");
  CHECK(two.rhs.size() == 2);
}

TEST_CASE("semantic and syntax errors carry positions") {
  ParseError e1 = error_of("sum k: factorial(n*k) == 1");
  CHECK(std::string(e1.message()).find("non-linear") != std::string::npos);
  CHECK(e1.line() == 1);
  CHECK(e1.column() == 18);
  // no right-hand side still reports the semantic problem first
  ParseError e0 = error_of("sum k: factorial(n*k)");
  CHECK(std::string(e0.message()).find("non-linear") != std::string::npos);

  ParseError e2 = error_of("sum k: binomial(n,j) == 1");
  CHECK(std::string(e2.message()).find("unknown variable 'j'") != std::string::npos);
  CHECK(e2.column() == 19);

  ParseError e3 = error_of("sum k: binomial(n,k) ==\n  (1");
  CHECK(e3.line() == 2);

  CHECK(std::string(error_of("sum k: k^n == 1").message()).find("must not depend") != std::string::npos);
  CHECK(std::string(error_of("sum k: foo(k) == 1").message()).find("unknown variable 'foo'") != std::string::npos);
  CHECK(std::string(error_of("sum k: factorial(k/2) == 1").message()).find("integer-valued") != std::string::npos);
  CHECK(std::string(error_of("binomial(n,k) == 1").message()).find("expected 'sum'") != std::string::npos);
  CHECK(std::string(error_of("sum n: 1 == 1").message()).find("clashes") != std::string::npos);
  CHECK(std::string(error_of("sum k: 1 $ 2").message()).find("unexpected character") != std::string::npos);
}

TEST_CASE("property: parser totality on random inputs") {
  const std::string alphabet = "sumk nbinomialfctorpch()^*/+-,:;=.0123456789#\n";
  for (int trial = 0; trial < 2000; ++trial) {
    std::string src;
    long len = testing::uniform(0, 40);
    for (long i = 0; i < len; ++i) src += alphabet[static_cast<std::size_t>(testing::uniform(0, alphabet.size() - 1))];
    if (trial % 3 == 0) src = "sum k: " + src;
    try {
      IdentityAst ast = parse_identity(src);
      CHECK(parse_identity(print_identity(ast)) == ast);
      lower_identity(ast);
    } catch (const ParseError& e) {
      CHECK(e.line() >= 1);
      CHECK(e.column() >= 1);
    } catch (const Error&) {
      // arithmetic rejections (e.g. huge powers) are fine as long as nothing crashes
    }
  }
  // deep nesting is rejected, not a stack overflow
  std::string deep = "sum k: " + std::string(5000, '(') + "1" + std::string(5000, ')');
  CHECK_THROWS_AS(parse_identity(deep), ParseError);
}

TEST_CASE("identity hash is stable and sensitive") {
  IdentityAst a = parse_identity(kBinomial);
  IdentityAst b = parse_identity("sum k :   binomial( n , k )/2^n==1 # same");
  CHECK(identity_hash(a) == identity_hash(b));
  CHECK(identity_hash(a).size() == 16);
  CHECK(identity_hash(a) != identity_hash(parse_identity("sum k: binomial(n,k) / 3^n == 1")));
}
