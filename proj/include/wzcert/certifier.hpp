#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wzcert/hyperterm.hpp"
#include "wzcert/ratfunc.hpp"

namespace wzcert {

/// Orientation of the WZ equation. With G = R*F:
///   Forward          F(n+1,k) - F(n,k) = G(n,k+1) - G(n,k)
///   ForwardNegated   F(n+1,k) - F(n,k) = G(n,k) - G(n,k+1)
///   Backward         F(n+1,k) - F(n,k) = G(n,k) - G(n,k-1)
///   BackwardNegated  F(n+1,k) - F(n,k) = G(n,k-1) - G(n,k)
enum class Convention { Forward, ForwardNegated, Backward, BackwardNegated };

const std::vector<Convention>& all_conventions();
std::string convention_name(Convention c);
std::optional<Convention> parse_convention(const std::string& name);

struct Certificate {
  std::vector<RatFunc> rs;
  Convention convention = Convention::Forward;
};

struct RationalCheck {
  bool holds = false;
  /// Numerator of (lhs - rhs) after clearing denominators; zero iff holds.
  MultiPoly residual;
};

/// Reduces the WZ equation for F and R under `c` to an identity of rational
/// functions and decides it symbolically.
RationalCheck verify_wz_rational(const HyperTerm& f, const RatFunc& r, Convention c,
                                 const std::string& n = "n", const std::string& k = "k");

/// Closed product form of the mate written forward: a term H with
/// F(n+1,k) - F(n,k) = H(n,k+1) - H(n,k).
HyperTerm forward_mate(const HyperTerm& f, const RatFunc& r, Convention c, const std::string& k = "k");

/// sum_j coeffs[j](n) F(n+j,k) = G(n,k+1) - G(n,k) with G = R*F.
struct Recurrence {
  std::vector<MultiPoly> coefficients;  // c_0 .. c_J in n
  RatFunc certificate;
  int order() const { return static_cast<int>(coefficients.size()) - 1; }
};

/// F(n+j,k)/F(n,k) for j = 0..order as factored ratios.
std::vector<FactoredRatio> shift_ratios(const HyperTerm& f, int order, const std::string& n);

RationalCheck verify_recurrence_rational(const HyperTerm& f, const Recurrence& rec,
                                         const std::string& n = "n", const std::string& k = "k");

/// Integer window [lo, hi] holding the support of f in k at `at` (which
/// assigns every other variable), or nullopt when unbounded.
std::optional<std::pair<long, long>> support_window(const HyperTerm& f, const std::string& k,
                                                    const Point& at);

/// Exact sum of f over k in [lo, hi] at the other coordinates `at`.
Rational sum_range(const HyperTerm& f, const std::string& k, const Point& at, long lo, long hi);

enum class Verdict { Proved, Refuted, Inconclusive };
std::string verdict_name(Verdict v);

struct BoundaryReport {
  bool ok = false;
  std::string evidence;
};

struct BaseReport {
  bool ok = false;
  bool computed = false;
  long n0 = 0;
  Rational value;
  Rational expected;
};

struct SupportAndBase {
  BoundaryReport boundary;
  BaseReport base;
};

/// Boundary vanishing of the mate and the base case of the normalized sum.
SupportAndBase verify_support_and_base(const Identity& normalized, const Certificate& cert, long n0);

struct CertOptions {
  std::optional<long> n0;
  /// Try the other conventions when the given one fails.
  bool try_all_conventions = true;
};

struct CertReport {
  Verdict verdict = Verdict::Inconclusive;
  bool rational_identity_holds = false;
  Convention convention = Convention::Forward;
  MultiPoly residual;
  std::vector<Convention> conventions_tried;
  BoundaryReport boundary;
  BaseReport base;
  std::optional<Point> counterexample;
  std::vector<std::string> notes;
  Identity normalized;
  HyperTerm mate;  // forward mate in closed form
};

/// Smallest integer >= start at which every right-hand side term is defined
/// and their sum is nonzero.
long choose_base_index(const Identity& id, long start = 0);

CertReport certify_identity(const Identity& id, const Certificate& cert, const CertOptions& options = {});

/// Proves the identity from a recurrence satisfied by its normalized sum:
/// the constant 1 solves it and enough initial values equal 1.
CertReport certify_by_recurrence(const Identity& id, const Recurrence& rec, const CertOptions& options = {});

}  // namespace wzcert
