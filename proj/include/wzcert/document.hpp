#pragma once

#include <string>
#include <vector>

#include "wzcert/certifier.hpp"
#include "wzcert/record.hpp"

namespace wzcert {

enum class DocFormat { Text, Latex };

struct EmitOptions {
  DocFormat format = DocFormat::Text;
  /// Drop the generation metadata line.
  bool reproducible = false;
  std::string title;
};

/// Compact display of a polynomial: positive terms first, coefficients
/// juxtaposed ("n+1-k", "4k+1").
std::string display_poly(const MultiPoly& p, const std::vector<std::string>& order, bool latex = false);

/// Rational function with linear factors pulled out where `hints` divide,
/// e.g. "-k/(2(n+1-k))".
std::string display_ratfunc(const RatFunc& r, const std::vector<std::string>& order,
                            const std::vector<MultiPoly>& hints = {}, bool latex = false);

/// Linear factors suggested by the shift structure of an identity's summand.
std::vector<MultiPoly> display_hints(const Identity& id);

std::string display_term(const HyperTerm& t, const std::vector<std::string>& order, bool latex = false);

/// The identity as an equation, e.g. "sum_k binomial(n, k)/2^n = 1".
std::string display_identity(const Identity& id, bool latex = false);

/// Full document. Proved: statement, one-line certificate, the checks with
/// their outcomes, base case, machine form. Refuted: the counterexample.
/// Inconclusive: a diagnostic flagged as not a proof.
std::string emit_proof_document(const CertReport& report, const Identity& id, const CertificateRecord& rec,
                                const EmitOptions& options = {});

}  // namespace wzcert
