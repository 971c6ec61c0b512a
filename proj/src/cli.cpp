#include "bcc/cli.hpp"

#include <cstdint>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "bcc/baselines.hpp"
#include "bcc/clustering.hpp"
#include "bcc/exact.hpp"
#include "bcc/experiment.hpp"
#include "bcc/graph.hpp"
#include "bcc/pivot.hpp"
#include "bcc/rng.hpp"

namespace bcc {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::string& path, const std::string& text,
                std::ostream& fallback) {
  if (path.empty()) {
    fallback << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << text;
}

int cmd_run(const std::string& graph_path, const std::string& algo,
            std::uint64_t seed, std::ostream& out) {
  BipartiteGraph g = parse_graph(read_file(graph_path));
  Clustering c = [&] {
    if (algo == "pivot") return run_pivot(g, seed).clustering;
    if (algo == "ghkz") return run_ghkz(g, seed);
    return opt(g).witness;
  }();
  out << format_clustering(c);
  out << "cost " << cost(g, c).total << "\n";
  return 0;
}

int cmd_verify(const std::string& graph_path, std::uint64_t seed,
               std::uint64_t runs, bool self_test, std::ostream& out,
               std::ostream& err) {
  BipartiteGraph g = parse_graph(read_file(graph_path));
  if (self_test) {
    // Duplicate one colored event and make sure the checker flags it.
    for (std::uint64_t i = 0; i < std::max<std::uint64_t>(runs, 1); ++i) {
      PivotResult res = run_pivot(g, derive_seed(seed, i));
      for (std::size_t ph = 0; ph < res.trace.phases.size(); ++ph) {
        for (const TupleEvent& ev : res.trace.phases[ph].events) {
          if (ev.colored.none()) continue;
          Trace mutated = res.trace;
          mutated.phases[ph].events.push_back(ev);
          TraceVerdict v = verify_trace(g, res.clustering, mutated);
          if (v.ok) {
            err << "self-test FAILED: injected duplicate coloring "
                   "was not detected\n";
            return 1;
          }
          out << "self-test ok, injected violation detected: " << v.message
              << "\n";
          return 0;
        }
      }
    }
    err << "self-test impossible: no run colored any pair\n";
    return 2;
  }
  for (std::uint64_t i = 0; i < runs; ++i) {
    PivotResult res = run_pivot(g, derive_seed(seed, i));
    TraceVerdict v = verify_trace(g, res.clustering, res.trace);
    if (!v.ok) {
      err << "violation at run " << i << ": " << v.message << "\n";
      return 1;
    }
  }
  out << "ok, " << runs << " runs\n";
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"bipartite correlation clustering toolkit"};
  app.require_subcommand(1);

  std::string run_graph, run_algo = "pivot";
  std::uint64_t run_seed = 1;
  CLI::App* run_cmd =
      app.add_subcommand("run", "run one algorithm on a graph file");
  run_cmd->add_option("--graph", run_graph, "graph file (bcc format)")
      ->required();
  run_cmd->add_option("--algo", run_algo, "pivot | ghkz | exact")
      ->check(CLI::IsMember({"pivot", "ghkz", "exact"}));
  run_cmd->add_option("--seed", run_seed, "PRNG seed");

  std::string exp_config, exp_out;
  CLI::App* exp_cmd =
      app.add_subcommand("experiment", "run an experiment config, emit CSV");
  exp_cmd->add_option("--config", exp_config, "config file")->required();
  exp_cmd->add_option("--out", exp_out, "output CSV path (default: stdout, "
                                        "or the config's out key)");

  std::string ver_graph;
  std::uint64_t ver_seed = 1, ver_runs = 100;
  bool ver_self_test = false;
  CLI::App* ver_cmd = app.add_subcommand(
      "verify", "check the coloring guarantees over seeded runs");
  ver_cmd->add_option("--graph", ver_graph, "graph file")->required();
  ver_cmd->add_option("--seed", ver_seed, "base seed");
  ver_cmd->add_option("--runs", ver_runs, "number of runs");
  ver_cmd->add_flag("--self-test", ver_self_test,
                    "inject a duplicate coloring and expect detection");

  std::string gen_spec, gen_out;
  std::uint64_t gen_seed = 1;
  CLI::App* gen_cmd = app.add_subcommand("gen", "generate a graph file");
  gen_cmd->add_option("--gen", gen_spec,
                      "instance spec, e.g. 'random 5 5 0.5' or "
                      "'counterexample 8'")
      ->required();
  gen_cmd->add_option("--seed", gen_seed, "generator seed");
  gen_cmd->add_option("--out", gen_out, "output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (run_cmd->parsed())
      return cmd_run(run_graph, run_algo, run_seed, out);
    if (exp_cmd->parsed()) {
      ExperimentConfig cfg = parse_config(read_file(exp_config));
      std::string path = !exp_out.empty() ? exp_out : cfg.out;
      write_text(path, run_experiment_csv(cfg), out);
      return 0;
    }
    if (ver_cmd->parsed())
      return cmd_verify(ver_graph, ver_seed, ver_runs, ver_self_test, out,
                        err);
    if (gen_cmd->parsed()) {
      write_text(gen_out, serialize_graph(build_graph_spec(gen_spec, gen_seed)),
                 out);
      return 0;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace bcc
