#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "fairc/cli.hpp"
#include "fairc/instance.hpp"

using namespace fairc;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("fairc_cli_" + std::to_string(::getpid()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }

  std::string write(const std::string& name, const std::string& text) const {
    const fs::path p = path_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("generate, solve and check the small counterexamples") {
  TempDir dir;
  const std::string lex = dir.file("lex.json");
  REQUIRE(run({"generate", "--family", "no_mms_lex", "-o", lex}).code == kExitHolds);
  CHECK(run({"solve", "--property", "mms", "--instance", lex}).code == kExitFails);
  CHECK(run({"oracle", "--properties", "mms", "--instance", lex}).code == kExitFails);
  CHECK(run({"solve", "--property", "mms", "--force-oracle", "--instance", lex}).code == kExitFails);
  const Run po = run({"solve", "--property", "prop1", "--po", "--instance", lex});
  CHECK(po.code == kExitHolds);
  CHECK(po.out.find("agent 0:") != std::string::npos);

  const std::string t3 = dir.file("t3.json");
  REQUIRE(run({"generate", "--family", "mnw_not_ef1", "-o", t3}).code == kExitHolds);
  const std::string fair = dir.write("fair.json", R"({"bundles": [["g1"], ["g2", "g3", "g4"], ["f1", "f2", "f3", "f4"]]})");
  const std::string mnw = dir.write("mnw.json", R"({"bundles": [["g1", "g2"], ["g3", "g4"], ["f1", "f2", "f3", "f4"]]})");
  CHECK(run({"check", "--property", "ef1", "--instance", t3, "--allocation", fair}).code == kExitHolds);
  CHECK(run({"check", "--property", "po", "--instance", t3, "--allocation", fair}).code == kExitHolds);
  CHECK(run({"check", "--property", "ef1", "--instance", t3, "--allocation", mnw}).code == kExitFails);
  CHECK(run({"check", "--property", "mnw", "--instance", t3, "--allocation", mnw}).code == kExitHolds);
  CHECK(run({"check", "--property", "mnw", "--instance", t3, "--allocation", fair}).code == kExitFails);

  const std::string witness = dir.file("w.json");
  REQUIRE(run({"oracle", "--properties", "ef1,po", "--instance", t3, "-o", witness}).code == kExitHolds);
  CHECK(run({"check", "--property", "ef1", "--instance", t3, "--allocation", witness}).code == kExitHolds);

  const std::string t4 = dir.file("t4.json");
  REQUIRE(run({"generate", "--family", "no_alpha_mms_binary", "--x", "1", "--y", "1", "-o", t4}).code == kExitHolds);
  CHECK(run({"solve", "--property", "mms", "--instance", t4}).code == kExitFails);
  const Run mu = run({"mms-value", "--instance", t4, "--json"});
  CHECK(mu.code == kExitHolds);
  CHECK(mu.out.find("\"mu\"") != std::string::npos);
}

TEST_CASE("input errors exit with code 2") {
  TempDir dir;
  const std::string bad = dir.write("bad.json", "{ not json");
  CHECK(run({"solve", "--property", "prop1", "--instance", bad}).code == kExitInputError);
  CHECK(run({"solve", "--property", "prop1", "--instance", dir.file("missing.json")}).code == kExitInputError);
  CHECK(run({"frobnicate"}).code == kExitInputError);
  CHECK(run({}).code == kExitInputError);
  CHECK(run({"solve", "--instance", bad}).code == kExitInputError);  // --property missing
  const std::string bin = dir.write("bin.json", R"({"agents": 1, "goods": ["a"], "class": "binary", "valuations": [[2]]})");
  const Run r = run({"solve", "--property", "mms", "--instance", bin});
  CHECK(r.code == kExitInputError);
  CHECK(r.err.find("value out of class range") != std::string::npos);
  CHECK(run({"generate", "--family", "partition", "--weights", "1,1,3", "--variant", "two_agent_ef1"}).code ==
        kExitInputError);
  CHECK(run({"verify", "--solver", "nope"}).code == kExitInputError);
}

TEST_CASE("budget overruns exit with code 3") {
  TempDir dir;
  const std::string h = dir.file("h.json");
  REQUIRE(run({"generate", "--family", "no_alpha_mms_additive", "--n", "4", "--ell", "4", "-o", h}).code == kExitHolds);
  CHECK(run({"oracle", "--properties", "mms", "--instance", h}).code == kExitFails);
  CHECK(run({"oracle", "--properties", "mms", "--instance", h, "--budget", "10"}).code == kExitSkipped);
}

TEST_CASE("JSON output is byte-identical across runs") {
  TempDir dir;
  const std::string t3 = dir.file("t3.json");
  REQUIRE(run({"generate", "--family", "mnw_not_ef1", "-o", t3}).code == kExitHolds);
  const std::vector<std::string> args = {"solve", "--property", "ef1", "--po", "--instance", t3, "--json"};
  const Run a = run(args), b = run(args);
  CHECK(a.code == b.code);
  CHECK(a.out == b.out);
  CHECK(a.out.find("\"status\"") != std::string::npos);
}

TEST_CASE("reduction generators round-trip through files") {
  TempDir dir;
  const std::string p = dir.file("p.json");
  REQUIRE(run({"generate", "--family", "partition", "--weights", "1,1,2", "--variant", "two_agent_ef1", "-o", p}).code ==
          kExitHolds);
  const Instance inst = parse_instance(slurp(p));
  CHECK(inst.n_agents() == 2);
  CHECK(run({"oracle", "--properties", "ef1", "--instance", p}).code == kExitHolds);

  const std::string g = dir.file("g.json");
  REQUIRE(run({"generate", "--family", "equitable_coloring", "--vertices", "3", "--edges", "0-1,1-2,2-0", "--k", "2",
               "-o", g})
              .code == kExitHolds);
  CHECK(run({"oracle", "--properties", "ef1", "--instance", g}).code == kExitFails);

  const std::string hg = dir.file("hg.json");
  REQUIRE(run({"generate", "--family", "rainbow_coloring", "--vertices", "2", "--hyperedges", "0,1", "--k", "2", "-o",
               hg})
              .code == kExitHolds);
  CHECK(parse_instance(slurp(hg)).valuation_class() == ValuationClass::lexicographic);
  CHECK(run({"oracle", "--properties", "ef1", "--instance", hg}).code == kExitHolds);
}

TEST_CASE("verify reports agreement") {
  const Run ok = run({"verify", "--solver", "mms_lex", "--cases", "50", "--seed", "3"});
  CHECK(ok.code == kExitHolds);
  CHECK(ok.out.find("50/50") != std::string::npos);
  const Run js = run({"verify", "--solver", "two_identical_prop1", "--cases", "20", "--json"});
  CHECK(js.code == kExitHolds);
  CHECK(js.out.find("\"mismatches\"") != std::string::npos);
}

TEST_CASE("dispatch covers every class") {
  TempDir dir;
  const std::string add = dir.write("add.json", R"({"agents": 2, "goods": ["a", "b", "c"], "class": "additive",
      "valuations": [[3, 1, 1], [3, 1, 1]], "frozen": {}})");
  for (const char* p : {"ef1", "prop1", "mms", "ef", "prop"}) {
    CAPTURE(p);
    const int code = run({"solve", "--property", p, "--instance", add}).code;
    CHECK((code == kExitHolds || code == kExitFails));
  }
  CHECK(run({"solve", "--property", "ef", "--instance", add}).code == kExitFails);
  CHECK(run({"solve", "--property", "ef1", "--instance", add}).code == kExitHolds);

  const std::string bin = dir.write("bin.json", R"({"agents": 2, "goods": ["a", "b"], "class": "binary",
      "valuations": [[1, 1], [1, 0]], "frozen": {"a": 0}})");
  CHECK(run({"solve", "--property", "mms", "--po", "--instance", bin}).code == kExitHolds);
  const Run dump = run({"solve", "--property", "prop1", "--dump-network", "--instance", bin});
  CHECK(dump.code == kExitHolds);
  CHECK_FALSE(dump.err.empty());
}
