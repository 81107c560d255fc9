#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "wzcert/driver.hpp"

using namespace wzcert;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "wzcert");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  int code = cli_dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(WZCERT_TEST_DATA) + "/" + name; }

fs::path scratch() {
  fs::path dir = fs::temp_directory_path() / ("wzcert_cli_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("prove writes the document and the record") {
  fs::path dir = scratch();
  Run r = run({"prove", "--identity", data("binomial.wz"), "--emit", (dir / "proof.txt").string(), "--record",
               (dir / "cert.json").string(), "--reproducible"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"verdict\":\"proved\"") != std::string::npos);
  CHECK(slurp(dir / "proof.txt") == slurp(data("binomial_proof.golden.txt")));

  Run v = run({"verify", "--identity", data("binomial.wz"), "--certificate", (dir / "cert.json").string()});
  CHECK(v.code == 0);

  // corrupted coefficient
  std::string cert = slurp(dir / "cert.json");
  auto at = cert.find("\"1/2\"");
  REQUIRE(at != std::string::npos);
  cert.replace(at, 5, "\"1/3\"");
  std::ofstream(dir / "bad.json") << cert;
  CHECK(run({"verify", "--identity", data("binomial.wz"), "--certificate", (dir / "bad.json").string()}).code == 1);

  // record for another identity
  CHECK(run({"verify", "--identity", data("binomial_plain.wz"), "--certificate", (dir / "cert.json").string()}).code ==
        1);

  // unreadable / malformed records are usage errors
  std::ofstream(dir / "junk.json") << "{\"identity_hash\": 3";
  CHECK(run({"verify", "--identity", data("binomial.wz"), "--certificate", (dir / "junk.json").string()}).code == 3);
  CHECK(run({"multi-verify", "--identity", data("binomial.wz"), "--certificate", (dir / "cert.json").string()}).code ==
        3);
  fs::remove_all(dir);
}

TEST_CASE("exit codes") {
  CHECK(run({"prove", "--identity", data("false_base.wz")}).code == 1);
  CHECK(run({"prove", "--identity", data("bad_nonlinear.wz")}).code == 3);
  CHECK(run({"prove", "--identity", data("no_such_file.wz")}).code == 3);
  CHECK(run({"prove"}).code == 3);
  CHECK(run({"frobnicate"}).code == 3);
  CHECK(run({"prove", "--identity", data("binomial.wz"), "--format", "pdf"}).code == 3);
  CHECK(run({"ct", "--r", "3", "--a", "2", "--budget", "10"}).code == 4);

  fs::path dir = scratch();
  std::ofstream(dir / "two.wz") << "sum k: binomial(n,k) * (k+1) == n*2^(n-1) + 2^n\n";
  CHECK(run({"prove", "--identity", (dir / "two.wz").string()}).code == 2);
  fs::remove_all(dir);
}

TEST_CASE("EKHAD_BUDGET sets the default and --budget overrides it") {
  ::setenv("EKHAD_BUDGET", "10", 1);
  CHECK(run({"ct", "--r", "3", "--a", "2"}).code == 4);
  CHECK(run({"prove", "--identity", data("trinomial.wz")}).code == 4);
  Run ok = run({"ct", "--r", "3", "--a", "2", "--budget", "100000"});
  CHECK(ok.code == 0);
  CHECK(ok.out == "90\n");
  ::unsetenv("EKHAD_BUDGET");
  CHECK(default_budget(7) == 7);
}

TEST_CASE("ct, sum and oracle subcommands") {
  Run ct = run({"ct", "--r", "2", "--a", "1"});
  CHECK(ct.code == 0);
  CHECK(ct.out == "2\n");

  Run s = run({"sum", "--identity", data("ramanujan.wz"), "--to", "3"});
  CHECK(s.code == 0);
  CHECK(s.out.find("n=1  lhs=3/2  rhs=3/2  ok") != std::string::npos);
  CHECK(run({"sum", "--identity", data("trinomial.wz"), "--to", "2"}).code == 3);  // parameters missing
  CHECK(run({"sum", "--identity", data("trinomial.wz"), "--to", "2", "--param", "x=1", "--param", "y=2", "--param",
             "z=3"})
            .code == 0);
  CHECK(run({"oracle", "--check", "identity", "--identity", data("false_shift.wz")}).code == 1);
  CHECK(run({"oracle", "--check", "ahlgren-ono", "--to", "10"}).code == 0);
  CHECK(run({"oracle", "--check", "beukers"}).code == 0);
  CHECK(run({"oracle", "--check", "parable"}).code == 0);
  CHECK(run({"oracle", "--check", "sqrt2"}).code == 0);
  CHECK(run({"oracle", "--check", "astrology"}).code == 3);
}

TEST_CASE("batch proving is deterministic under --jobs") {
  fs::path dir = scratch();
  std::vector<std::string> ids{data("binomial.wz"), data("vandermonde.wz"), data("dixon.wz"), data("false_shift.wz"),
                               data("ramanujan.wz")};
  auto batch = [&](const std::string& jobs, const std::string& sub) {
    std::vector<std::string> args{"prove", "--jobs", jobs, "--reproducible", "--emit", (dir / sub).string(), "--identity"};
    args.insert(args.end(), ids.begin(), ids.end());
    return run(args);
  };
  Run one = batch("1", "serial");
  Run four = batch("4", "parallel");
  CHECK(one.code == 1);  // one false identity in the batch
  CHECK(four.code == 1);
  for (const auto& id : ids) {
    std::string stem = fs::path(id).stem().string() + ".txt";
    CHECK(slurp(dir / "serial" / stem) == slurp(dir / "parallel" / stem));
    CHECK_FALSE(slurp(dir / "serial" / stem).empty());
  }
  // report lines come back in input order
  std::istringstream lines(four.out);
  std::string line;
  for (const auto& id : ids) {
    REQUIRE(std::getline(lines, line));
    CHECK(line.find(id) != std::string::npos);
  }
  fs::remove_all(dir);
}
