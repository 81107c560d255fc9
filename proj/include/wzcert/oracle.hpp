#pragma once

#include <string>
#include <utility>
#include <vector>

#include "wzcert/hyperterm.hpp"
#include "wzcert/multipoly.hpp"

namespace wzcert {

/// Integer summation bounds for the sums of `id`, resolved at the point
/// `at` (main variable and parameters). Explicit ranges are evaluated
/// directly; natural ranges come from the support of the summand, with
/// bounds on the other summation variables substituted once. Throws Error
/// when a range stays infinite.
std::vector<std::pair<long, long>> resolve_box(const HyperTerm& f, const std::vector<SumRange>& sums,
                                               const Point& at);

/// Exact sum of f over its sums at `at`, nested outermost first so that an
/// explicit range may refer to outer summation variables.
Rational exact_sum(const HyperTerm& f, const std::vector<SumRange>& sums, const Point& at);

/// Left minus right side of an identity at `at`.
Rational identity_defect(const Identity& id, const Point& at);

/// Harmonic number H_m, exact; H_0 = 0.
Rational harmonic(long m);

/// sum_{k=1}^n k C(n,k)^2 C(n+k,k)^2 (1/(2k) + H_{n+k} + H_{n-k} - 2 H_k).
Rational ahlgren_ono_eval(long n);

/// sum_k C(n,k)^2 C(n+k,k)^2.
Integer apery_number(long n);

/// Power series in q with integer coefficients, truncated after q^order.
class QSeries {
 public:
  explicit QSeries(long order) : coeffs_(static_cast<std::size_t>(order + 1)) {}

  long order() const { return static_cast<long>(coeffs_.size()) - 1; }
  const Integer& operator[](long i) const { return coeffs_.at(static_cast<std::size_t>(i)); }
  Integer& operator[](long i) { return coeffs_.at(static_cast<std::size_t>(i)); }
  const std::vector<Integer>& coefficients() const { return coeffs_; }

  friend QSeries operator*(const QSeries& a, const QSeries& b);
  friend bool operator==(const QSeries& a, const QSeries& b) { return a.coeffs_ == b.coeffs_; }

  static QSeries one(long order);
  /// 1 - q^step.
  static QSeries one_minus(long step, long order);

 private:
  std::vector<Integer> coeffs_;
};

/// q prod_{m>=1} (1 - q^{2m})^4 (1 - q^{4m})^4 up to q^order.
QSeries eta_product(long order);

struct BeukersReport {
  long p = 0;
  Integer apery_value;  // A((p-1)/2)
  Integer a_value;      // coefficient of q^p
  bool congruent = false;
};

/// A((p-1)/2) == a(p) mod p^2. Throws Error when order < p.
BeukersReport beukers_check(long p, long order);

struct Descent {
  Integer a;
  Integer b;
  bool invariant_holds = false;  // a^2 - 2b^2 == -(A^2 - 2B^2)
};

/// One step (A, B) -> (2B - A, A - B).
Descent sqrt2_descent(const Integer& A, const Integer& B);

/// Iterates the descent while both entries stay positive, stopping at
/// (1, 1). The returned chain starts with (A, B).
std::vector<std::pair<Integer, Integer>> descent_chain(const Integer& A, const Integer& B, int max_steps = 1000);

/// The descent invariant as a polynomial identity in A, B.
bool sqrt2_invariant_symbolic();

/// (x_1 + ... + x_n)^2 == sum x_i^2 + 2 sum_{i<j} x_i x_j, plus the
/// induction step from n - 1, both by canonical form.
bool parable_check(long n);

}  // namespace wzcert
