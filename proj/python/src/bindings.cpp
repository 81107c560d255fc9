#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "wzcert/driver.hpp"
#include "wzcert/dsl.hpp"
#include "wzcert/multiwz.hpp"
#include "wzcert/oracle.hpp"
#include "wzcert/version.hpp"

namespace py = pybind11;
using namespace wzcert;

namespace {

py::object fraction(const Rational& q) {
  static py::object Fraction = py::module_::import("fractions").attr("Fraction");
  return Fraction(py::int_(py::str(to_string(q.get_num()))), py::int_(py::str(to_string(q.get_den()))));
}

py::dict outcome_dict(const ProveOutcome& o) {
  py::dict d;
  d["verdict"] = verdict_name(o.report.verdict);
  d["method"] = o.method;
  d["identity_hash"] = o.identity_hash;
  d["convention"] = convention_name(o.report.convention);
  d["notes"] = o.report.notes;
  d["record"] = o.record ? py::object(py::str(record_to_json(*o.record))) : py::object(py::none());
  py::list certs;
  if (o.record) {
    for (const auto& r : o.record->certificates) certs.append(display_ratfunc(r, o.id.display_order(), display_hints(o.id)));
  }
  d["certificates"] = certs;
  return d;
}

ProveOptions options(int max_order, int degree_bound, std::optional<long> base_index, std::uint64_t budget) {
  ProveOptions o;
  o.max_order = max_order;
  o.degree_bound = degree_bound;
  o.base_index = base_index;
  o.budget = budget;
  return o;
}

Point to_point(const std::map<std::string, long>& values) {
  Point p;
  for (const auto& [k, v] : values) p[k] = v;
  return p;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact WZ certification of hypergeometric identities";
  m.attr("__version__") = kEngineVersion;

  static py::exception<Error> error(m, "Error", PyExc_RuntimeError);
  static py::exception<ParseError> parse_error(m, "ParseError", error.ptr());
  static py::exception<BudgetExceeded> budget_error(m, "BudgetExceeded", error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParseError& e) {
      py::set_error(parse_error, e.what());
    } catch (const BudgetExceeded& e) {
      py::set_error(budget_error, e.what());
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  m.def(
      "prove",
      [](const std::string& src, int max_order, int degree_bound, std::optional<long> base_index, std::uint64_t budget) {
        ProveOutcome o;
        {
          py::gil_scoped_release release;
          o = prove_source(src, options(max_order, degree_bound, base_index, budget));
        }
        return outcome_dict(o);
      },
      py::arg("source"), py::arg("max_order") = 6, py::arg("degree_bound") = 3, py::arg("base_index") = py::none(),
      py::arg("budget") = 0);

  m.def(
      "verify",
      [](const std::string& src, const std::string& record, std::optional<long> base_index, std::uint64_t budget) {
        CertificateRecord rec = record_from_json(record);
        ProveOutcome o;
        {
          py::gil_scoped_release release;
          o = verify_source(src, rec, options(6, 3, base_index, budget));
        }
        return outcome_dict(o);
      },
      py::arg("source"), py::arg("record"), py::arg("base_index") = py::none(), py::arg("budget") = 0);

  m.def(
      "document",
      [](const std::string& src, const std::string& format, bool reproducible) {
        EmitOptions e;
        e.format = format == "latex" ? DocFormat::Latex : DocFormat::Text;
        e.reproducible = reproducible;
        return outcome_document(prove_source(src), e);
      },
      py::arg("source"), py::arg("format") = "text", py::arg("reproducible") = true);

  m.def("canonical", [](const std::string& src) { return print_identity(parse_identity(src)); }, py::arg("source"));
  m.def("identity_hash", [](const std::string& src) { return identity_hash(parse_identity(src)); }, py::arg("source"));

  m.def(
      "exact_sum",
      [](const std::string& src, long n, const std::map<std::string, long>& params) {
        Identity id = load_identity(src);
        Point at = to_point(params);
        at[id.main_var] = n;
        return fraction(exact_sum(id.summand, id.sums, at));
      },
      py::arg("source"), py::arg("n"), py::arg("params") = std::map<std::string, long>{});

  m.def(
      "constant_term", [](int r, int a) { return fraction(constant_term(r, a)); }, py::arg("r"), py::arg("a"));
  m.def("apery_number", [](long n) { return fraction(Rational(apery_number(n))); }, py::arg("n"));
  m.def("ahlgren_ono_eval", [](long n) { return fraction(ahlgren_ono_eval(n)); }, py::arg("n"));

  m.def(
      "cli",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "wzcert");
        std::vector<const char*> argv;
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out;
        std::ostringstream err;
        int code = cli_dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
