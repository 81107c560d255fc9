#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wzcert/certifier.hpp"
#include "wzcert/hyperterm.hpp"

namespace wzcert {

/// rho = a(k)/b(k) * c(k+1)/c(k) with gcd(a(k), b(k+h)) = 1 for every
/// integer h >= 0.
struct GosperForm {
  MultiPoly a;
  MultiPoly b;
  MultiPoly c;
};

/// Nonnegative integers h for which some factor of the numerator and some
/// factor of the denominator of rho share a root after shifting by h.
std::vector<long> dispersion_set(const FactoredRatio& rho, const std::string& k);

GosperForm gosper_form(const FactoredRatio& rho, const std::string& k);

/// Upper bound on deg x for a(k) x(k+1) - b(k-1) x(k) = c(k) with deg c = dc;
/// -1 when only x = 0 can work.
int gosper_degree_bound(const MultiPoly& a, const MultiPoly& b, int dc, const std::string& k);

/// R with R(k+1) rho - R = 1, i.e. G = R t is an antidifference of t.
std::optional<RatFunc> gosper_ratio(const FactoredRatio& rho, const std::string& k);

/// Gosper's decision procedure. Returns R with G(k+1) - G(k) = t(k) for
/// G = R t, or nullopt when no hypergeometric antidifference exists.
std::optional<RatFunc> gosper(const HyperTerm& t, const std::string& k = "k");

/// Creative telescoping: the first order J = 1..max_order with a
/// recurrence. Throws NotFound when none exists up to max_order.
Recurrence zeilberger(const HyperTerm& f, int max_order = 6, const std::string& n = "n",
                      const std::string& k = "k");

/// Recurrence of exactly the given order, or nullopt.
std::optional<Recurrence> zeilberger_order(const HyperTerm& f, int order, const std::string& n = "n",
                                           const std::string& k = "k");

/// WZ certificate (forward convention) for a normalized summand, or nullopt
/// when (r1 - 1) F has no hypergeometric antidifference in k.
std::optional<RatFunc> wz_certificate_find(const HyperTerm& f, const std::string& n = "n",
                                           const std::string& k = "k");

/// Order used to break ties between certificates: numerator degree, then
/// denominator degree, then coefficients.
bool simpler_certificate(const RatFunc& a, const RatFunc& b);

}  // namespace wzcert
