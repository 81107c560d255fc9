#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wzcert/certifier.hpp"
#include "wzcert/hyperterm.hpp"

namespace wzcert {

struct MultiCert {
  std::vector<RatFunc> rs;  // one per summation variable
  Convention convention = Convention::Forward;
};

/// r_n - 1 = sum_i [R_i(k_i+1) rho_i - R_i], decided symbolically.
RationalCheck verify_multi(const HyperTerm& f, const std::vector<RatFunc>& rs, const std::string& n,
                           const std::vector<std::string>& ks);

/// Linear ansatz R_i = N_i / D: N_i of total degree <= degree_bound in
/// (n, k_1..k_r), D a product of k-dependent shift-denominator factors of f
/// with multiplicity <= 2. The first verified solution is returned.
std::optional<MultiCert> find_multi_ansatz(const HyperTerm& f, int degree_bound, const std::string& n,
                                           const std::vector<std::string>& ks);

/// Integer box containing the support of f in every summation variable at
/// the given coordinates, or nullopt when some side is unbounded.
std::optional<std::vector<std::pair<long, long>>> support_box(const HyperTerm& f, const std::vector<std::string>& ks,
                                                              const Point& at);

/// Exact sum of f over the box, other variables taken from `at`. nullopt
/// when a term still depends on unassigned parameters.
std::optional<Rational> box_sum(const HyperTerm& f, const std::vector<std::string>& ks, const Point& at,
                                const std::vector<std::pair<long, long>>& box);

/// Multi-sum certification: rational identity, compact support of F and
/// every mate G_i = R_i F, pointwise telescoping evidence, base case.
CertReport certify_multi(const Identity& id, const MultiCert& cert, const CertOptions& options = {});

/// Laurent polynomial in z_1..z_r with integer exponents.
class LaurentPoly {
 public:
  using Exponents = std::vector<int>;

  explicit LaurentPoly(int variables = 0) : r_(variables) {}

  int variables() const { return r_; }
  const std::map<Exponents, Rational>& terms() const { return terms_; }
  Rational coefficient(const Exponents& e) const;
  Rational constant_term() const { return coefficient(Exponents(static_cast<std::size_t>(r_), 0)); }
  void add(const Exponents& e, const Rational& c);

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.r_ == b.r_ && a.terms_ == b.terms_; }

  std::string to_string() const;

 private:
  int r_;
  std::map<Exponents, Rational> terms_;
};

/// prod_{i != j} (1 - z_i/z_j)^a, expanded.
LaurentPoly dyson_product(int r, int a);

/// Constant term of the Dyson product by dense expansion in the box
/// [-(r-1)a, (r-1)a]^r. Charges (2a+1)^r r^2 operations to the budget.
Rational constant_term(int r, int a);

}  // namespace wzcert
