#include "wzcert/driver.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <thread>

#include "wzcert/budget.hpp"
#include "wzcert/dsl.hpp"
#include "wzcert/multiwz.hpp"
#include "wzcert/oracle.hpp"
#include "wzcert/telescoper.hpp"
#include "wzcert/version.hpp"

namespace wzcert {

namespace {

constexpr std::uint64_t kDefaultBudget = 5'000'000'000ULL;

CertOptions cert_options(const ProveOptions& options) {
  CertOptions co;
  co.n0 = options.base_index;
  return co;
}

/// Refutes by a concrete counterexample when the identity itself fails for
/// some small n. Leaves the report untouched otherwise.
/// Parameters are pinned to small primes.
void oracle_refute(const Identity& id, long n0, CertReport& rep) {
  static const long kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19};
  Point at;
  for (std::size_t i = 0; i < id.params.size(); ++i) at[id.params[i]] = kPrimes[i % 8] + 20 * static_cast<long>(i / 8);
  for (long m = n0; m <= n0 + 10; ++m) {
    at[id.main_var] = m;
    try {
      Rational d = identity_defect(id, at);
      if (d != 0) {
        rep.verdict = Verdict::Refuted;
        rep.counterexample = at;
        rep.notes.push_back("left minus right side at " + id.main_var + "=" + std::to_string(m) + " is " +
                            to_string(d));
        return;
      }
    } catch (const BudgetExceeded&) {
      throw;
    } catch (const Error&) {
      return;
    }
  }
}

CertificateRecord make_record(CertificateRecord::Kind kind, const std::string& hash, Convention c,
                              std::vector<RatFunc> certs) {
  CertificateRecord rec;
  rec.kind = kind;
  rec.identity_hash = hash;
  rec.convention = c;
  rec.certificates = std::move(certs);
  rec.engine_version = kEngineVersion;
  return rec;
}

void prove_single(ProveOutcome& out, const ProveOptions& options) {
  const Identity& id = out.id;
  const std::string& n = id.main_var;
  const std::string& k = id.sums.front().var;
  CertOptions co = cert_options(options);
  HyperTerm f;
  try {
    f = divide_by_rhs(id).summand;
  } catch (const BudgetExceeded&) {
    throw;
  } catch (const Error& e) {
    out.report.notes.push_back(std::string("cannot normalize: ") + e.what());
    return;
  }

  std::optional<RatFunc> r;
  try {
    r = wz_certificate_find(f, n, k);
  } catch (const BudgetExceeded&) {
    throw;
  } catch (const Error& e) {
    out.report.notes.push_back(std::string("WZ search: ") + e.what());
  }
  if (r) {
    out.report = certify_identity(id, Certificate{{*r}, Convention::Forward}, co);
    out.record = make_record(CertificateRecord::Kind::WZ, out.identity_hash, out.report.convention, {*r});
    out.method = "wz";
    if (out.report.verdict != Verdict::Inconclusive) return;
  }

  try {
    Recurrence rec = zeilberger(f, options.max_order, n, k);
    CertReport rep = certify_by_recurrence(id, rec, co);
    if (!r || rep.verdict != Verdict::Inconclusive) {
      out.report = rep;
      CertificateRecord cr =
          make_record(CertificateRecord::Kind::Recurrence, out.identity_hash, Convention::Forward, {rec.certificate});
      cr.recurrence = rec.coefficients;
      out.record = cr;
      out.method = "recurrence";
    }
  } catch (const BudgetExceeded&) {
    throw;
  } catch (const NotFound&) {
    out.report.notes.push_back("no recurrence of order <= " + std::to_string(options.max_order));
  } catch (const Error& e) {
    out.report.notes.push_back(std::string("recurrence search: ") + e.what());
  }
}

void prove_multi(ProveOutcome& out, const ProveOptions& options) {
  const Identity& id = out.id;
  HyperTerm f;
  try {
    f = divide_by_rhs(id).summand;
  } catch (const BudgetExceeded&) {
    throw;
  } catch (const Error& e) {
    out.report.notes.push_back(std::string("cannot normalize: ") + e.what());
    return;
  }
  std::optional<MultiCert> cert;
  try {
    cert = find_multi_ansatz(f, options.degree_bound, id.main_var, id.sum_vars());
  } catch (const BudgetExceeded&) {
    throw;
  } catch (const Error& e) {
    out.report.notes.push_back(std::string("ansatz: ") + e.what());
  }
  if (!cert) {
    out.report.notes.push_back("no multi-sum certificate up to degree " + std::to_string(options.degree_bound));
    return;
  }
  out.report = certify_multi(id, *cert, cert_options(options));
  out.record = make_record(CertificateRecord::Kind::Multi, out.identity_hash, cert->convention, cert->rs);
  out.method = "multi";
}

ProveOutcome start(const std::string& src) {
  IdentityAst ast = parse_identity(src);
  if (!ast.rhs) throw ParseError("identity has no right-hand side ('== ...')", 1, 1);
  ProveOutcome out;
  out.id = lower_identity(ast);
  out.identity_hash = identity_hash(ast);
  out.method = "none";
  return out;
}

}  // namespace

ProveOutcome prove_source(const std::string& src, const ProveOptions& options) {
  ProveOutcome out = start(src);
  Budget budget(options.budget);
  BudgetScope scope(budget);
  if (out.id.sums.size() == 1) {
    prove_single(out, options);
  } else {
    prove_multi(out, options);
  }
  if (out.report.verdict == Verdict::Inconclusive) {
    long n0 = options.base_index ? *options.base_index : choose_base_index(out.id);
    oracle_refute(out.id, n0, out.report);
  }
  return out;
}

ProveOutcome verify_source(const std::string& src, const CertificateRecord& rec, const ProveOptions& options) {
  ProveOutcome out = start(src);
  out.record = rec;
  out.method = kind_name(rec.kind);
  if (rec.identity_hash != out.identity_hash) {
    out.report.verdict = Verdict::Refuted;
    out.report.notes.push_back("record is for identity " + rec.identity_hash + ", not " + out.identity_hash);
    return out;
  }
  std::size_t want = rec.kind == CertificateRecord::Kind::Multi ? out.id.sums.size() : 1;
  if (rec.certificates.size() != want || (rec.kind != CertificateRecord::Kind::Multi && out.id.sums.size() != 1)) {
    out.report.verdict = Verdict::Refuted;
    out.report.notes.push_back("record has " + std::to_string(rec.certificates.size()) +
                               " certificate(s) for " + std::to_string(out.id.sums.size()) + " summation variable(s)");
    return out;
  }
  Budget budget(options.budget);
  BudgetScope scope(budget);
  CertOptions co = cert_options(options);
  co.try_all_conventions = false;
  switch (rec.kind) {
    case CertificateRecord::Kind::WZ:
      out.report = certify_identity(out.id, rec.as_certificate(), co);
      break;
    case CertificateRecord::Kind::Recurrence:
      out.report = certify_by_recurrence(out.id, rec.as_recurrence(), co);
      break;
    case CertificateRecord::Kind::Multi:
      out.report = certify_multi(out.id, rec.as_multi(), co);
      break;
  }
  return out;
}

int verdict_exit_code(Verdict v) {
  switch (v) {
    case Verdict::Proved: return 0;
    case Verdict::Refuted: return 1;
    case Verdict::Inconclusive: return 2;
  }
  return 2;
}

std::string certificate_hash(const std::optional<CertificateRecord>& rec) {
  return rec ? fnv1a64(record_to_json(*rec, false)) : std::string("-");
}

std::string outcome_document(const ProveOutcome& outcome, const EmitOptions& options) {
  return emit_proof_document(outcome.report, outcome.id, outcome.record.value_or(CertificateRecord{}), options);
}

std::uint64_t default_budget(std::uint64_t fallback) {
  const char* env = std::getenv("EKHAD_BUDGET");
  if (env == nullptr || *env == '\0') return fallback;
  try {
    std::size_t used = 0;
    unsigned long long v = std::stoull(env, &used);
    if (used == std::string(env).size()) return v;
  } catch (const std::exception&) {
  }
  return fallback;
}

// ---------------------------------------------------------------- CLI

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + path);
  f << text;
}

struct Common {
  std::vector<std::string> identities;
  std::string certificate;
  std::string emit;
  std::string record;
  std::string format = "text";
  std::string title;
  bool reproducible = false;
  int max_order = 6;
  int degree_bound = 3;
  std::optional<long> base_index;
  std::optional<std::uint64_t> budget;
  int jobs = 1;
};

ProveOptions prove_options(const Common& c) {
  ProveOptions o;
  o.max_order = c.max_order;
  o.degree_bound = c.degree_bound;
  o.base_index = c.base_index;
  o.budget = c.budget ? *c.budget : default_budget(kDefaultBudget);
  return o;
}

EmitOptions emit_options(const Common& c) {
  EmitOptions e;
  e.format = c.format == "latex" ? DocFormat::Latex : DocFormat::Text;
  e.reproducible = c.reproducible;
  e.title = c.title;
  return e;
}

struct JobResult {
  int code = 0;
  std::string line;      // run report
  std::string document;  // empty when nothing to emit
  std::string record;
  std::string error;
};

std::string report_line(const std::string& path, const std::string& verdict, const std::string& method, double seconds,
                        const std::string& cert_hash, const std::string& id_hash) {
  nlohmann::ordered_json j;
  j["identity"] = path;
  j["verdict"] = verdict;
  j["method"] = method;
  j["seconds"] = std::round(seconds * 1000.0) / 1000.0;
  j["certificate_hash"] = cert_hash;
  j["identity_hash"] = id_hash;
  return j.dump();
}

template <class Body>
JobResult run_job(const std::string& path, const Common& c, Body body) {
  JobResult r;
  auto t0 = std::chrono::steady_clock::now();
  auto seconds = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };
  try {
    std::string src = read_file(path);
    ProveOutcome o = body(src);
    r.code = verdict_exit_code(o.report.verdict);
    r.document = outcome_document(o, emit_options(c));
    if (o.record) r.record = record_to_json(*o.record);
    r.line = report_line(path, verdict_name(o.report.verdict), o.method, seconds(), certificate_hash(o.record),
                         o.identity_hash);
  } catch (const BudgetExceeded& e) {
    r.code = 4;
    r.error = path + ": budget exceeded: " + e.what();
    r.line = report_line(path, "budget-exceeded", "none", seconds(), "-", "-");
  } catch (const ParseError& e) {
    r.code = 3;
    r.error = path + ":" + e.what();
    r.line = report_line(path, "parse-error", "none", seconds(), "-", "-");
  } catch (const RecordError& e) {
    r.code = 3;
    r.error = e.what();
    r.line = report_line(path, "record-error", "none", seconds(), "-", "-");
  } catch (const UsageError& e) {
    r.code = 3;
    r.error = e.what();
    r.line = report_line(path, "usage-error", "none", seconds(), "-", "-");
  } catch (const Error& e) {
    r.code = 2;
    r.error = path + ": " + e.what();
    r.line = report_line(path, "inconclusive", "none", seconds(), "-", "-");
  }
  return r;
}

std::string output_path(const std::string& base, const std::string& identity, bool batch, const std::string& ext) {
  if (!batch || base == "-") return base;
  std::filesystem::create_directories(base);
  return (std::filesystem::path(base) / (std::filesystem::path(identity).stem().string() + ext)).string();
}

int finish_jobs(const Common& c, const std::vector<JobResult>& results, std::ostream& out, std::ostream& err) {
  bool batch = c.identities.size() > 1;
  int code = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    if (!r.error.empty()) err << "wzcert: " << r.error << "\n";
    if (!c.emit.empty() && !r.document.empty()) {
      write_file(output_path(c.emit, c.identities[i], batch, c.format == "latex" ? ".tex" : ".txt"), r.document, out);
    }
    if (!c.record.empty() && !r.record.empty()) {
      write_file(output_path(c.record, c.identities[i], batch, ".json"), r.record, out);
    }
    out << r.line << "\n";
    code = std::max(code, r.code);
  }
  return code;
}

int cmd_prove(const Common& c, std::ostream& out, std::ostream& err) {
  ProveOptions po = prove_options(c);
  std::vector<JobResult> results(c.identities.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < c.identities.size(); i = next++) {
      results[i] = run_job(c.identities[i], c, [&](const std::string& src) { return prove_source(src, po); });
    }
  };
  int jobs = std::max(1, std::min<int>(c.jobs, static_cast<int>(c.identities.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return finish_jobs(c, results, out, err);
}

int cmd_verify(const Common& c, bool multi, std::ostream& out, std::ostream& err) {
  if (c.identities.size() != 1) throw UsageError("verify takes exactly one --identity");
  CertificateRecord rec;
  try {
    rec = record_from_json(read_file(c.certificate));
  } catch (const RecordError& e) {
    err << "wzcert: " << c.certificate << ": " << e.what() << "\n";
    return 3;
  }
  if (multi && rec.kind != CertificateRecord::Kind::Multi) {
    err << "wzcert: multi-verify needs a multi-sum certificate record (kind \"multi\")\n";
    return 3;
  }
  ProveOptions po = prove_options(c);
  std::vector<JobResult> results{
      run_job(c.identities[0], c, [&](const std::string& src) { return verify_source(src, rec, po); })};
  return finish_jobs(c, results, out, err);
}

Point parse_params(const std::vector<std::string>& items) {
  Point p;
  for (const auto& item : items) {
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--param expects name=value, got '" + item + "'");
    try {
      p[item.substr(0, eq)] = parse_rational(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw UsageError("bad value in --param " + item);
    }
  }
  return p;
}

/// Prints lhs and rhs for n in [from, to]; returns the number of mismatches.
long tabulate(const Identity& id, const Point& params, long from, long to, std::ostream& out, bool quiet) {
  for (const auto& v : id.params) {
    if (params.count(v) == 0) throw UsageError("parameter " + v + " needs a value (--param " + v + "=...)");
  }
  long bad = 0;
  for (long m = from; m <= to; ++m) {
    Point at = params;
    at[id.main_var] = m;
    Rational lhs = exact_sum(id.summand, id.sums, at);
    Rational rhs = 0;
    for (const auto& t : id.rhs) {
      auto v = try_eval(t, at);
      if (!v) throw Error("right-hand side does not evaluate at " + id.main_var + "=" + std::to_string(m));
      rhs += *v;
    }
    bool ok = lhs == rhs;
    if (!ok) ++bad;
    if (!quiet || !ok) {
      out << id.main_var << "=" << m << "  lhs=" << to_string(lhs) << "  rhs=" << to_string(rhs) << "  "
          << (ok ? "ok" : "MISMATCH") << "\n";
    }
  }
  return bad;
}

int cmd_sum(const Common& c, long from, long to, const std::vector<std::string>& params, bool quiet, std::ostream& out,
            std::ostream& err) {
  if (c.identities.size() != 1) throw UsageError("sum takes exactly one --identity");
  Identity id = load_identity(read_file(c.identities[0]));
  Budget budget(c.budget ? *c.budget : default_budget(kDefaultBudget));
  BudgetScope scope(budget);
  long bad = tabulate(id, parse_params(params), from, to, out, quiet);
  if (quiet) out << (bad == 0 ? "identity holds" : "identity FAILS") << " for " << id.main_var << "=" << from << ".."
                 << to << (bad ? " (" + std::to_string(bad) + " mismatches)" : "") << "\n";
  (void)err;
  return bad == 0 ? 0 : 1;
}

int cmd_oracle(const Common& c, const std::string& check, long from, long to, long order,
               const std::vector<long>& primes, const std::vector<std::string>& params, std::ostream& out,
               std::ostream& err) {
  if (check == "identity") return cmd_sum(c, from, to, params, true, out, err);
  Budget budget(c.budget ? *c.budget : default_budget(kDefaultBudget));
  BudgetScope scope(budget);
  bool ok = true;
  if (check == "ahlgren-ono") {
    long lo = std::max(1L, from);
    for (long m = lo; m <= to; ++m) {
      Rational v = ahlgren_ono_eval(m);
      if (v != 0) {
        ok = false;
        out << "ahlgren_ono_eval(" << m << ") = " << to_string(v) << "\n";
      }
    }
    out << (ok ? "ahlgren_ono_eval(n) = 0" : "ahlgren_ono_eval FAILS") << " for n=" << lo << ".." << to << "\n";
  } else if (check == "beukers") {
    for (long p : primes) {
      BeukersReport r = beukers_check(p, order);
      ok = ok && r.congruent;
      out << "p=" << p << "  A((p-1)/2)=" << to_string(r.apery_value) << "  a(p)=" << to_string(r.a_value) << "  "
          << (r.congruent ? "congruent mod p^2" : "NOT congruent") << "\n";
    }
  } else if (check == "parable") {
    long lo = std::max(1L, from);
    for (long m = lo; m <= to; ++m) {
      bool r = parable_check(m);
      ok = ok && r;
      out << "n=" << m << "  " << (r ? "ok" : "FAILED") << "\n";
    }
  } else if (check == "sqrt2") {
    bool sym = sqrt2_invariant_symbolic();
    ok = sym;
    out << "invariant a^2-2b^2 -> -(a^2-2b^2): " << (sym ? "holds symbolically" : "FAILS") << "\n";
    auto chain = descent_chain(17, 12);
    for (const auto& [a, b] : chain) out << "(" << to_string(a) << ", " << to_string(b) << ")\n";
  } else {
    throw UsageError("unknown oracle check '" + check + "'");
  }
  return ok ? 0 : 1;
}

}  // namespace

int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"wzcert: WZ-certified proofs of hypergeometric identities"};
  app.set_version_flag("--version", std::string("wzcert ") + kEngineVersion);
  app.require_subcommand(1);
  Common c;
  long from = 0;
  long to = 10;
  long order = 20;
  long r = 0;
  long a = 0;
  bool quiet = false;
  std::string check;
  std::vector<std::string> params;
  std::vector<long> primes{3, 5, 7, 11, 13};

  auto add_budget = [&](CLI::App* s) {
    s->add_option("--budget", c.budget, "Operation budget per identity (default 5e9, or EKHAD_BUDGET)");
  };
  auto add_emit = [&](CLI::App* s) {
    s->add_option("--emit", c.emit, "Write the proof document here ('-' for stdout; a directory in batch mode)");
    s->add_option("--format", c.format, "Document format")->check(CLI::IsMember({"text", "latex"}));
    s->add_option("--title", c.title, "Document title");
    s->add_flag("--reproducible", c.reproducible, "Omit generation metadata");
    s->add_option("--base-index", c.base_index, "Base index n0");
  };

  auto* prove = app.add_subcommand("prove", "Find a certificate and certify the identity");
  prove->add_option("--identity", c.identities, "Identity file(s) in the DSL")->required();
  prove->add_option("--record", c.record, "Write the certificate record here");
  prove->add_option("--max-order", c.max_order, "Largest recurrence order to search")->check(CLI::Range(1, 20));
  prove->add_option("--degree-bound", c.degree_bound, "Multi-sum ansatz degree bound")->check(CLI::Range(0, 10));
  prove->add_option("--jobs", c.jobs, "Identities proved concurrently")->check(CLI::Range(1, 256));
  add_emit(prove);
  add_budget(prove);

  CLI::App* verify = nullptr;
  CLI::App* mverify = nullptr;
  for (auto* slot : {&verify, &mverify}) {
    bool m = slot == &mverify;
    *slot = app.add_subcommand(m ? "multi-verify" : "verify",
                               m ? "Check a multi-sum certificate record" : "Check a certificate record");
    (*slot)->add_option("--identity", c.identities, "Identity file")->required()->expected(1);
    (*slot)->add_option("--certificate", c.certificate, "Certificate record (JSON)")->required();
    add_emit(*slot);
    add_budget(*slot);
  }

  auto* ct = app.add_subcommand("ct", "Dyson constant term of prod_{i!=j}(1 - z_i/z_j)^a");
  ct->add_option("--r", r, "Number of variables")->required()->check(CLI::Range(1, 12));
  ct->add_option("--a", a, "Exponent")->required()->check(CLI::Range(0, 50));
  add_budget(ct);

  auto* sum = app.add_subcommand("sum", "Tabulate both sides of an identity exactly");
  sum->add_option("--identity", c.identities, "Identity file")->required()->expected(1);
  sum->add_option("--from", from, "First n");
  sum->add_option("--to", to, "Last n");
  sum->add_option("--param", params, "Parameter value, name=value");
  sum->add_flag("--quiet", quiet, "Only print mismatches and a summary");
  add_budget(sum);

  auto* oracle = app.add_subcommand("oracle", "Independent exact checks");
  oracle->add_option("--check", check, "What to check")
      ->required()
      ->check(CLI::IsMember({"identity", "ahlgren-ono", "beukers", "parable", "sqrt2"}));
  oracle->add_option("--identity", c.identities, "Identity file (for --check identity)")->expected(1);
  oracle->add_option("--from", from, "First n");
  oracle->add_option("--to", to, "Last n");
  oracle->add_option("--order", order, "q-series truncation (beukers)");
  oracle->add_option("--primes", primes, "Primes (beukers)");
  oracle->add_option("--param", params, "Parameter value, name=value");
  add_budget(oracle);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 3;
  }

  try {
    if (*prove) return cmd_prove(c, out, err);
    if (*verify) return cmd_verify(c, false, out, err);
    if (*mverify) return cmd_verify(c, true, out, err);
    if (*ct) {
      Budget budget(c.budget ? *c.budget : default_budget(kDefaultBudget));
      BudgetScope scope(budget);
      out << to_string(constant_term(static_cast<int>(r), static_cast<int>(a))) << "\n";
      return 0;
    }
    if (*sum) return cmd_sum(c, from, to, params, quiet, out, err);
    if (*oracle) {
      if (check == "identity" && c.identities.empty()) throw UsageError("--check identity needs --identity");
      if (check == "ahlgren-ono" && !oracle->count("--to")) to = 50;
      if (check == "parable" && !oracle->count("--to")) to = 8;
      if (check == "identity" && !oracle->count("--to")) to = 20;
      return cmd_oracle(c, check, from, to, order, primes, params, out, err);
    }
  } catch (const BudgetExceeded& e) {
    err << "wzcert: budget exceeded: " << e.what() << "\n";
    return 4;
  } catch (const ParseError& e) {
    err << "wzcert: " << (c.identities.empty() ? std::string() : c.identities.front() + ":") << e.what() << "\n";
    return 3;
  } catch (const UsageError& e) {
    err << "wzcert: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    err << "wzcert: " << e.what() << "\n";
    return 2;
  }
  return 3;
}

}  // namespace wzcert
