#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "wzcert/certifier.hpp"
#include "wzcert/document.hpp"
#include "wzcert/record.hpp"

namespace wzcert {

struct ProveOptions {
  int max_order = 6;
  int degree_bound = 3;
  std::optional<long> base_index;
  /// Operations allowed per identity; 0 is unlimited.
  std::uint64_t budget = 0;
};

/// Everything one identity produced. `record` is set whenever a certificate
/// was found or supplied, proved or not.
struct ProveOutcome {
  Identity id;
  std::string identity_hash;
  CertReport report;
  std::optional<CertificateRecord> record;
  std::string method;  // "wz", "recurrence", "multi", or "none"
};

/// Searches for a certificate and certifies with it: a WZ certificate
/// first, then a Zeilberger recurrence up to max_order; multi-sums use the
/// polynomial ansatz up to degree_bound. Throws ParseError and
/// BudgetExceeded.
ProveOutcome prove_source(const std::string& src, const ProveOptions& options = {});

/// Certifies with a supplied record under its recorded convention only. A
/// record for a different identity is refuted.
ProveOutcome verify_source(const std::string& src, const CertificateRecord& rec, const ProveOptions& options = {});

/// 0 proved, 1 refuted, 2 inconclusive.
int verdict_exit_code(Verdict v);

/// Hash of the compact machine form, "-" when there is no record.
std::string certificate_hash(const std::optional<CertificateRecord>& rec);

/// Document for an outcome, or a diagnostic when no record exists.
std::string outcome_document(const ProveOutcome& outcome, const EmitOptions& options);

/// Budget default: EKHAD_BUDGET when set and valid, otherwise `fallback`.
std::uint64_t default_budget(std::uint64_t fallback);

/// Command-line entry point. Exit codes: 0 proved/success, 1 refuted or
/// failed, 2 inconclusive, 3 usage or parse error, 4 budget exceeded.
int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wzcert
