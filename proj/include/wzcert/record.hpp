#pragma once

#include <string>
#include <vector>

#include "wzcert/certifier.hpp"
#include "wzcert/errors.hpp"
#include "wzcert/multiwz.hpp"

namespace wzcert {

/// Malformed certificate record.
class RecordError : public Error {
 public:
  using Error::Error;
};

/// Machine form of a proof: the certificate plus what it certifies.
struct CertificateRecord {
  enum class Kind { WZ, Recurrence, Multi };

  Kind kind = Kind::WZ;
  std::string identity_hash;
  Convention convention = Convention::Forward;
  std::vector<RatFunc> certificates;  // one per summation variable
  std::vector<MultiPoly> recurrence;  // c_0..c_J, Kind::Recurrence only
  std::string engine_version;

  Certificate as_certificate() const { return {certificates, convention}; }
  MultiCert as_multi() const { return {certificates, convention}; }
  Recurrence as_recurrence() const;
};

std::string kind_name(CertificateRecord::Kind k);

/// JSON text. Polynomials are lists of {"c": "p/q", "e": {var: exponent}}.
std::string record_to_json(const CertificateRecord& rec, bool pretty = true);
/// Throws RecordError on anything malformed.
CertificateRecord record_from_json(const std::string& text);

}  // namespace wzcert
