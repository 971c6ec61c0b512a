#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bcc/graph.hpp"

namespace bcc {

// Parsed "key = value" experiment description. A config plus the code version
// determines every output byte.
struct ExperimentConfig {
  enum class Mode { Costs, DualCheck };
  Mode mode = Mode::Costs;
  std::uint64_t seed = 1;
  std::uint64_t runs = 1000;
  std::vector<std::string> algos;  // subset of: pivot ghkz exact bounds
  std::string out;                 // optional default output path
  double sigma = 3.0;
  unsigned workers = 1;
  std::vector<std::string> instances;  // raw instance specs, config order
};

ExperimentConfig parse_config(const std::string& text);

// Builds one graph from a spec string:
//   file <path>
//   random <n_left> <n_right> <p>
//   biclique <l1,l2,...> <r1,r2,...>
//   planted <lsizes> <rsizes> <eps>
//   counterexample <n>
//   pattern <n_left> <n_right> <index>     (edge (l,r) iff bit l*n_right+r)
// The seed feeds the random/planted generators and is ignored otherwise.
BipartiteGraph build_graph_spec(const std::string& spec, std::uint64_t seed);

struct ExpandedInstance {
  std::string name;
  BipartiteGraph graph;
  std::uint64_t run_seed_base;
  std::optional<std::size_t> closed_form_opt;  // counterexample n, n >= 4
};

// Expands config instance lines (a trailing count on random/planted makes
// that many graphs; "enumerate <nl> <nr> <count>" makes count evenly strided
// pattern instances). Graph seeds and per-run seed bases are derived from the
// config seed by expanded position, so appending instances never changes the
// seeds of earlier ones.
std::vector<ExpandedInstance> expand_instances(const ExperimentConfig& cfg);

// Full pipeline: expand, run, and render the CSV report (header included).
std::string run_experiment_csv(const ExperimentConfig& cfg);

}  // namespace bcc
