#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "bcc/cli.hpp"
#include "bcc/graph.hpp"

using namespace bcc;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult invoke(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"bcc"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir() {
  fs::path dir = fs::temp_directory_path() / "bcc_cli_tests";
  fs::create_directories(dir);
  return dir;
}

fs::path write_file(const std::string& name, const std::string& text) {
  fs::path p = scratch_dir() / name;
  std::ofstream(p) << text;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const std::string kBadSquare = "bcc 2 2 3\n0 0\n0 1\n1 0\n";

}  // namespace

TEST_CASE("run: exact on the bad square") {
  fs::path g = write_file("square.bcc", kBadSquare);
  CliResult r = invoke({"run", "--graph", g.string(), "--algo", "exact"});
  CHECK(r.code == 0);
  CHECK(r.err.empty());
  CHECK(r.out.find("cost 1\n") != std::string::npos);
}

TEST_CASE("run: randomized algorithms are seed-deterministic") {
  fs::path g = write_file("square2.bcc", kBadSquare);
  for (const char* algo : {"pivot", "ghkz"}) {
    CliResult a =
        invoke({"run", "--graph", g.string(), "--algo", algo, "--seed", "5"});
    CliResult b =
        invoke({"run", "--graph", g.string(), "--algo", algo, "--seed", "5"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("cost 1\n") != std::string::npos);
  }
}

TEST_CASE("run: argument and input failures") {
  CHECK(invoke({"run"}).code != 0);  // --graph is required
  CHECK(invoke({}).code != 0);       // a subcommand is required
  CHECK(invoke({"warp"}).code != 0);

  fs::path g = write_file("square3.bcc", kBadSquare);
  CliResult bad_algo =
      invoke({"run", "--graph", g.string(), "--algo", "magic"});
  CHECK(bad_algo.code != 0);

  CliResult missing = invoke({"run", "--graph", "/no/such/file.bcc"});
  CHECK(missing.code == 2);
  CHECK(missing.err.find("error:") == 0);

  fs::path broken = write_file("broken.bcc", "bcc 2 2 1\n0 0\n0 0\n");
  CliResult malformed = invoke({"run", "--graph", broken.string()});
  CHECK(malformed.code == 2);
  CHECK(malformed.err.find("line") != std::string::npos);

  fs::path big = write_file("big.bcc",
                            serialize_graph(gen_counterexample(20)));
  CliResult refused =
      invoke({"run", "--graph", big.string(), "--algo", "exact"});
  CHECK(refused.code == 2);
  CHECK(refused.err.find("exceeds limit") != std::string::npos);
}

TEST_CASE("verify: clean runs and self-test") {
  fs::path g = write_file("verify.bcc",
                          serialize_graph(gen_counterexample(5)));
  CliResult ok = invoke({"verify", "--graph", g.string(), "--runs", "50"});
  CHECK(ok.code == 0);
  CHECK(ok.out == "ok, 50 runs\n");

  CliResult self =
      invoke({"verify", "--graph", g.string(), "--self-test"});
  CHECK(self.code == 0);
  CHECK(self.out.find("self-test ok") == 0);

  // No run on an edgeless graph ever colors a pair, so the self-test cannot
  // inject a violation there.
  fs::path empty = write_file("empty.bcc", "bcc 2 2 0\n");
  CliResult no_pairs =
      invoke({"verify", "--graph", empty.string(), "--self-test"});
  CHECK(no_pairs.code == 2);
}

TEST_CASE("gen: emits canonical graph files") {
  CliResult r = invoke({"gen", "--gen", "counterexample 3"});
  CHECK(r.code == 0);
  CHECK(r.out == "bcc 3 3 6\n0 1\n0 2\n1 0\n1 2\n2 0\n2 1\n");

  fs::path out = scratch_dir() / "gen_random.bcc";
  CliResult w = invoke({"gen", "--gen", "random 6 5 0.4", "--seed", "11",
                        "--out", out.string()});
  CHECK(w.code == 0);
  CHECK(w.out.empty());
  CHECK(parse_graph(slurp(out)) == gen_random(6, 5, 0.4, 11));

  CHECK(invoke({"gen", "--gen", "bogus 1"}).code == 2);
}

TEST_CASE("experiment: stdout, --out, and the config out key") {
  fs::path cfg = write_file("exp.cfg",
                            "mode = costs\n"
                            "runs = 20\n"
                            "algos = pivot exact\n"
                            "instance = counterexample 4\n");
  CliResult to_stdout = invoke({"experiment", "--config", cfg.string()});
  CHECK(to_stdout.code == 0);
  CHECK(to_stdout.out.rfind("instance,", 0) == 0);
  CHECK(to_stdout.out.find("counterexample-4,4,4,12,pivot,20,6,0,6,6,4,exact")
        != std::string::npos);

  fs::path out = scratch_dir() / "exp_out.csv";
  CliResult to_file =
      invoke({"experiment", "--config", cfg.string(), "--out", out.string()});
  CHECK(to_file.code == 0);
  CHECK(to_file.out.empty());
  CHECK(slurp(out) == to_stdout.out);

  fs::path keyed_out = scratch_dir() / "exp_keyed.csv";
  fs::path cfg2 = write_file("exp2.cfg",
                             "mode = costs\n"
                             "runs = 20\n"
                             "algos = pivot exact\n"
                             "out = " + keyed_out.string() + "\n"
                             "instance = counterexample 4\n");
  CliResult keyed = invoke({"experiment", "--config", cfg2.string()});
  CHECK(keyed.code == 0);
  CHECK(keyed.out.empty());
  CHECK(slurp(keyed_out) == to_stdout.out);

  CliResult bad_cfg = invoke(
      {"experiment", "--config", write_file("bad.cfg", "mode = x\n").string()});
  CHECK(bad_cfg.code == 2);
  CHECK(bad_cfg.err.find("line 1") != std::string::npos);
}
