#include "wzcert/record.hpp"

#include <json.hpp>

#include "wzcert/version.hpp"

namespace wzcert {

using nlohmann::json;

Recurrence CertificateRecord::as_recurrence() const {
  if (certificates.size() != 1) throw RecordError("recurrence record needs exactly one certificate");
  return Recurrence{recurrence, certificates.front()};
}

std::string kind_name(CertificateRecord::Kind k) {
  switch (k) {
    case CertificateRecord::Kind::WZ: return "wz";
    case CertificateRecord::Kind::Recurrence: return "recurrence";
    case CertificateRecord::Kind::Multi: return "multi";
  }
  return "wz";
}

namespace {

json poly_to_json(const MultiPoly& p) {
  json out = json::array();
  const auto& vars = p.variables();
  for (const auto& [e, c] : p.terms()) {
    json exps = json::object();
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (e[i] != 0) exps[vars[i]] = e[i];
    }
    out.push_back({{"c", to_string(c)}, {"e", exps}});
  }
  return out;
}

MultiPoly poly_from_json(const json& j) {
  if (!j.is_array()) throw RecordError("polynomial must be a list of terms");
  MultiPoly out;
  for (const auto& t : j) {
    if (!t.is_object() || !t.contains("c") || !t["c"].is_string()) throw RecordError("term needs a coefficient \"c\"");
    Rational c;
    try {
      c = parse_rational(t["c"].get<std::string>());
    } catch (const std::exception& e) {
      throw RecordError(std::string("bad coefficient: ") + e.what());
    }
    MultiPoly term(c);
    if (t.contains("e")) {
      if (!t["e"].is_object()) throw RecordError("exponents \"e\" must be an object");
      for (const auto& [v, x] : t["e"].items()) {
        if (!x.is_number_integer() || x.get<long>() < 0 || x.get<long>() > 1000) {
          throw RecordError("exponent of " + v + " must be a small nonnegative integer");
        }
        if (v.empty()) throw RecordError("empty variable name");
        term *= MultiPoly::variable(v).pow(static_cast<unsigned>(x.get<long>()));
      }
    }
    out += term;
  }
  return out;
}

}  // namespace

std::string record_to_json(const CertificateRecord& rec, bool pretty) {
  json j;
  j["format"] = "wzcert-certificate";
  j["version"] = 1;
  j["identity_hash"] = rec.identity_hash;
  j["kind"] = kind_name(rec.kind);
  j["convention"] = convention_name(rec.convention);
  j["r"] = rec.certificates.size();
  json certs = json::array();
  for (const auto& r : rec.certificates) {
    certs.push_back({{"numerator", poly_to_json(r.numerator())}, {"denominator", poly_to_json(r.denominator())}});
  }
  j["certificates"] = certs;
  if (rec.kind == CertificateRecord::Kind::Recurrence) {
    json rc = json::array();
    for (const auto& c : rec.recurrence) rc.push_back(poly_to_json(c));
    j["recurrence"] = rc;
  }
  j["engine_version"] = rec.engine_version.empty() ? std::string(kEngineVersion) : rec.engine_version;
  return pretty ? j.dump(2) + "\n" : j.dump();
}

CertificateRecord record_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw RecordError(std::string("certificate record is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw RecordError("certificate record must be a JSON object");
  auto str = [&](const char* key) {
    if (!j.contains(key) || !j[key].is_string()) throw RecordError(std::string("missing string field \"") + key + "\"");
    return j[key].get<std::string>();
  };
  CertificateRecord rec;
  rec.identity_hash = str("identity_hash");
  rec.engine_version = j.contains("engine_version") && j["engine_version"].is_string()
                           ? j["engine_version"].get<std::string>()
                           : std::string();
  std::string kind = j.contains("kind") ? str("kind") : std::string("wz");
  if (kind == "wz") {
    rec.kind = CertificateRecord::Kind::WZ;
  } else if (kind == "recurrence") {
    rec.kind = CertificateRecord::Kind::Recurrence;
  } else if (kind == "multi") {
    rec.kind = CertificateRecord::Kind::Multi;
  } else {
    throw RecordError("unknown record kind \"" + kind + "\"");
  }
  auto conv = parse_convention(str("convention"));
  if (!conv) throw RecordError("unknown convention \"" + str("convention") + "\"");
  rec.convention = *conv;
  if (!j.contains("certificates") || !j["certificates"].is_array()) throw RecordError("missing \"certificates\" list");
  for (const auto& c : j["certificates"]) {
    if (!c.is_object() || !c.contains("numerator") || !c.contains("denominator")) {
      throw RecordError("certificate needs \"numerator\" and \"denominator\"");
    }
    MultiPoly den = poly_from_json(c["denominator"]);
    if (den.is_zero()) throw RecordError("certificate denominator is zero");
    rec.certificates.emplace_back(poly_from_json(c["numerator"]), den);
  }
  if (j.contains("r")) {
    if (!j["r"].is_number_integer() || j["r"].get<long>() != static_cast<long>(rec.certificates.size())) {
      throw RecordError("field \"r\" does not match the number of certificates");
    }
  }
  if (rec.kind == CertificateRecord::Kind::Recurrence) {
    if (!j.contains("recurrence") || !j["recurrence"].is_array() || j["recurrence"].size() < 2) {
      throw RecordError("recurrence record needs at least two coefficients");
    }
    for (const auto& c : j["recurrence"]) rec.recurrence.push_back(poly_from_json(c));
  }
  if (rec.certificates.empty()) throw RecordError("no certificates in the record");
  return rec;
}

}  // namespace wzcert
