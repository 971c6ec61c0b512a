#include "bcc/experiment.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "bcc/baselines.hpp"
#include "bcc/bounds.hpp"
#include "bcc/exact.hpp"
#include "bcc/format.hpp"
#include "bcc/pivot.hpp"
#include "bcc/rng.hpp"

namespace bcc {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::uint64_t parse_u64(const std::string& s, const std::string& what) {
  try {
    std::size_t pos;
    unsigned long long v = std::stoull(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad " + what + " value '" + s + "'");
  }
}

double parse_f64(const std::string& s, const std::string& what) {
  try {
    std::size_t pos;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad " + what + " value '" + s + "'");
  }
}

std::vector<std::size_t> parse_sizes(const std::string& s) {
  std::vector<std::size_t> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t comma = s.find(',', start);
    out.push_back(parse_u64(s.substr(start, comma - start), "size list entry"));
    if (comma == std::string::npos) return out;
    start = comma + 1;
  }
}

std::string join_sizes(const std::vector<std::size_t>& v) {
  std::ostringstream out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out << (i ? "+" : "") << v[i];
  return out.str();
}

BipartiteGraph gen_pattern(std::size_t nl, std::size_t nr,
                           std::uint64_t index) {
  std::size_t bits = nl * nr;
  if (bits > 63)
    throw std::invalid_argument("pattern instances support at most 63 pairs");
  if (index >> bits)
    throw std::invalid_argument("pattern index out of range");
  EdgeList edges;
  for (std::uint32_t l = 0; l < nl; ++l)
    for (std::uint32_t r = 0; r < nr; ++r)
      if ((index >> (l * nr + r)) & 1) edges.emplace_back(l, r);
  return BipartiteGraph(nl, nr, edges);
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  bool seen_algos = false;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError(lineno, "expected 'key = value'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.empty()) throw ParseError(lineno, "empty value for '" + key + "'");
    try {
      if (key == "mode") {
        if (value == "costs") cfg.mode = ExperimentConfig::Mode::Costs;
        else if (value == "dualcheck") cfg.mode = ExperimentConfig::Mode::DualCheck;
        else throw std::invalid_argument("mode must be costs or dualcheck");
      } else if (key == "seed") {
        cfg.seed = parse_u64(value, "seed");
      } else if (key == "runs") {
        cfg.runs = parse_u64(value, "runs");
      } else if (key == "algos") {
        seen_algos = true;
        cfg.algos = split_ws(value);
        for (const std::string& a : cfg.algos)
          if (a != "pivot" && a != "ghkz" && a != "exact" && a != "bounds")
            throw std::invalid_argument("unknown algorithm '" + a + "'");
      } else if (key == "out") {
        cfg.out = value;
      } else if (key == "sigma") {
        cfg.sigma = parse_f64(value, "sigma");
        if (cfg.sigma <= 0) throw std::invalid_argument("sigma must be > 0");
      } else if (key == "workers") {
        cfg.workers = static_cast<unsigned>(parse_u64(value, "workers"));
        if (cfg.workers == 0) throw std::invalid_argument("workers must be >= 1");
      } else if (key == "instance") {
        cfg.instances.push_back(value);
      } else {
        throw std::invalid_argument("unknown key '" + key + "'");
      }
    } catch (const std::invalid_argument& e) {
      throw ParseError(lineno, e.what());
    }
  }
  if (cfg.instances.empty())
    throw ParseError(lineno, "config declares no instances");
  if (!seen_algos) cfg.algos = {"pivot"};
  return cfg;
}

BipartiteGraph build_graph_spec(const std::string& spec, std::uint64_t seed) {
  std::vector<std::string> tok = split_ws(spec);
  if (tok.empty()) throw std::invalid_argument("empty instance spec");
  const std::string& kind = tok[0];
  auto want = [&](std::size_t n) {
    if (tok.size() != n + 1)
      throw std::invalid_argument("instance spec '" + spec + "': expected " +
                                  std::to_string(n) + " parameters");
  };
  if (kind == "file") {
    want(1);
    std::ifstream in(tok[1]);
    if (!in) throw std::invalid_argument("cannot open graph file " + tok[1]);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_graph(buf.str());
  }
  if (kind == "random") {
    want(3);
    return gen_random(parse_u64(tok[1], "n_left"), parse_u64(tok[2], "n_right"),
                      parse_f64(tok[3], "p"), seed);
  }
  if (kind == "biclique") {
    want(2);
    return gen_biclique_union(parse_sizes(tok[1]), parse_sizes(tok[2]));
  }
  if (kind == "planted") {
    want(3);
    return gen_planted(parse_sizes(tok[1]), parse_sizes(tok[2]),
                       parse_f64(tok[3], "eps"), seed);
  }
  if (kind == "counterexample") {
    want(1);
    return gen_counterexample(parse_u64(tok[1], "n"));
  }
  if (kind == "pattern") {
    want(3);
    return gen_pattern(parse_u64(tok[1], "n_left"),
                       parse_u64(tok[2], "n_right"),
                       parse_u64(tok[3], "index"));
  }
  throw std::invalid_argument("unknown instance kind '" + kind + "'");
}

std::vector<ExpandedInstance> expand_instances(const ExperimentConfig& cfg) {
  std::vector<ExpandedInstance> out;
  auto push = [&](std::string name, const std::string& spec,
                  std::optional<std::size_t> closed_form) {
    std::size_t idx = out.size();
    std::uint64_t graph_seed = derive_seed(cfg.seed, 2 * idx);
    std::uint64_t run_base = derive_seed(cfg.seed, 2 * idx + 1);
    out.push_back({std::move(name), build_graph_spec(spec, graph_seed),
                   run_base, closed_form});
  };

  for (const std::string& raw : cfg.instances) {
    std::vector<std::string> tok = split_ws(raw);
    if (tok.empty()) throw std::invalid_argument("empty instance spec");
    const std::string& kind = tok[0];
    if (kind == "random" || kind == "planted") {
      std::size_t base_params = 3;
      if (tok.size() < base_params + 1 || tok.size() > base_params + 2)
        throw std::invalid_argument("instance spec '" + raw +
                                    "': wrong parameter count");
      std::uint64_t count = tok.size() == base_params + 2
                                ? parse_u64(tok.back(), "count")
                                : 1;
      if (count == 0)
        throw std::invalid_argument("instance count must be >= 1");
      std::string spec = tok[0];
      for (std::size_t i = 1; i <= base_params; ++i) spec += " " + tok[i];
      std::string stem;
      if (kind == "random")
        stem = "random-" + tok[1] + "x" + tok[2] + "-p" + tok[3];
      else
        stem = "planted-" + join_sizes(parse_sizes(tok[1])) + "x" +
               join_sizes(parse_sizes(tok[2])) + "-e" + tok[3];
      for (std::uint64_t k = 0; k < count; ++k)
        push(stem + "#" + std::to_string(k), spec, std::nullopt);
    } else if (kind == "enumerate") {
      if (tok.size() != 4)
        throw std::invalid_argument("instance spec '" + raw +
                                    "': expected 3 parameters");
      std::size_t nl = parse_u64(tok[1], "n_left");
      std::size_t nr = parse_u64(tok[2], "n_right");
      std::uint64_t count = parse_u64(tok[3], "count");
      std::size_t bits = nl * nr;
      if (bits > 63)
        throw std::invalid_argument("enumerate supports at most 63 pairs");
      std::uint64_t total = std::uint64_t(1) << bits;
      if (count == 0 || count > total)
        throw std::invalid_argument("enumerate count out of range");
      for (std::uint64_t k = 0; k < count; ++k) {
        // Evenly strided indices over [0, total).
        std::uint64_t index =
            count == 1 ? 0
                       : static_cast<std::uint64_t>(std::llround(
                             static_cast<double>(k) *
                             static_cast<double>(total - 1) /
                             static_cast<double>(count - 1)));
        std::string name = "pattern-" + std::to_string(nl) + "x" +
                           std::to_string(nr) + "-" + std::to_string(index);
        push(name, "pattern " + tok[1] + " " + tok[2] + " " +
                       std::to_string(index),
             std::nullopt);
      }
    } else if (kind == "counterexample") {
      if (tok.size() != 2)
        throw std::invalid_argument("instance spec '" + raw +
                                    "': expected 1 parameter");
      std::size_t n = parse_u64(tok[1], "n");
      std::optional<std::size_t> closed;
      if (n >= 4) closed = n;  // the n >= 4 closed form; see docs
      push("counterexample-" + tok[1], raw, closed);
    } else if (kind == "file") {
      if (tok.size() != 2)
        throw std::invalid_argument("instance spec '" + raw +
                                    "': expected 1 parameter");
      push(tok[1], raw, std::nullopt);
    } else if (kind == "biclique") {
      if (tok.size() != 3)
        throw std::invalid_argument("instance spec '" + raw +
                                    "': expected 2 parameters");
      push("biclique-" + join_sizes(parse_sizes(tok[1])) + "x" +
               join_sizes(parse_sizes(tok[2])),
           raw, std::nullopt);
    } else if (kind == "pattern") {
      if (tok.size() != 4)
        throw std::invalid_argument("instance spec '" + raw +
                                    "': expected 3 parameters");
      push("pattern-" + tok[1] + "x" + tok[2] + "-" + tok[3], raw,
           std::nullopt);
    } else {
      throw std::invalid_argument("unknown instance kind '" + kind + "'");
    }
  }
  return out;
}

namespace {

struct OptInfo {
  bool present = false;
  std::size_t value = 0;
  std::string source;  // "exact" or "closed-form"
};

OptInfo compute_opt(const ExpandedInstance& inst) {
  OptInfo info;
  try {
    info.value = opt(inst.graph).opt_cost;
    info.present = true;
    info.source = "exact";
  } catch (const std::invalid_argument&) {
    if (inst.closed_form_opt) {
      info.value = *inst.closed_form_opt;
      info.present = true;
      info.source = "closed-form";
    }
  }
  return info;
}

bool has_algo(const ExperimentConfig& cfg, const std::string& a) {
  for (const std::string& x : cfg.algos)
    if (x == a) return true;
  return false;
}

std::string costs_csv(const ExperimentConfig& cfg,
                      const std::vector<ExpandedInstance>& instances) {
  std::ostringstream out;
  out << "instance,n_left,n_right,n_edges,algorithm,runs,mean_cost,std_cost,"
         "min_cost,max_cost,opt_cost,opt_source,lp_bound,packing_bound,"
         "ratio_mean_over_opt\n";

  std::vector<std::string> run_algos;
  for (const std::string& a : cfg.algos)
    if (a == "pivot" || a == "ghkz") run_algos.push_back(a);

  for (const ExpandedInstance& inst : instances) {
    OptInfo opt_info;
    if (has_algo(cfg, "exact")) opt_info = compute_opt(inst);

    std::string lp_text, packing_text;
    if (has_algo(cfg, "bounds")) {
      try {
        lp_text = format_g(square_lp_bound(inst.graph));
      } catch (const std::invalid_argument&) {
        lp_text.clear();
      }
      packing_text = std::to_string(packing_bound(inst.graph));
    }

    auto emit = [&](const std::string& algo, std::uint64_t runs,
                    const std::string& mean, const std::string& stddev,
                    const std::string& mn, const std::string& mx,
                    const std::string& ratio) {
      out << inst.name << "," << inst.graph.n_left() << ","
          << inst.graph.n_right() << "," << inst.graph.n_edges() << "," << algo
          << "," << runs << "," << mean << "," << stddev << "," << mn << ","
          << mx << ",";
      if (opt_info.present) out << opt_info.value;
      out << "," << opt_info.source << "," << lp_text << "," << packing_text
          << "," << ratio << "\n";
    };

    if (run_algos.empty()) {
      emit("none", 0, "", "", "", "", "");
      continue;
    }
    for (const std::string& algo : run_algos) {
      double sum = 0, sq_sum = 0;
      std::size_t mn = 0, mx = 0;
      for (std::uint64_t j = 0; j < cfg.runs; ++j) {
        std::uint64_t s = derive_seed(inst.run_seed_base, j);
        Clustering c = algo == "pivot" ? run_pivot(inst.graph, s).clustering
                                       : run_ghkz(inst.graph, s);
        std::size_t v = cost(inst.graph, c).total;
        sum += static_cast<double>(v);
        sq_sum += static_cast<double>(v) * static_cast<double>(v);
        if (j == 0 || v < mn) mn = v;
        if (j == 0 || v > mx) mx = v;
      }
      if (cfg.runs == 0) {
        emit(algo, 0, "", "", "", "", "");
        continue;
      }
      double mean = sum / static_cast<double>(cfg.runs);
      double stddev = 0.0;
      if (cfg.runs >= 2) {
        double var = (sq_sum - static_cast<double>(cfg.runs) * mean * mean) /
                     static_cast<double>(cfg.runs - 1);
        stddev = std::sqrt(var < 0 ? 0 : var);
      }
      std::string ratio;
      if (opt_info.present && opt_info.value > 0)
        ratio = format_g(mean / static_cast<double>(opt_info.value));
      emit(algo, cfg.runs, format_g(mean), format_g(stddev),
           std::to_string(mn), std::to_string(mx), ratio);
    }
  }
  return out.str();
}

std::string dualcheck_csv(const ExperimentConfig& cfg,
                          const std::vector<ExpandedInstance>& instances) {
  std::ostringstream out;
  out << "instance,kind,id,case,is_edge,lhs,bound,slack,se,ok\n";
  for (const ExpandedInstance& inst : instances) {
    TupleStats stats = estimate_tuple_stats(inst.graph, cfg.runs,
                                            inst.run_seed_base, cfg.workers);
    DualSolution dual = dual_solution(stats);
    FeasibilityReport feas =
        check_dual_feasibility(inst.graph, dual, stats, cfg.sigma);
    Lemma3Report lem3 = check_lemma3(stats, dual, cfg.sigma);
    OptInfo opt_info = compute_opt(inst);

    for (const SlackEntry& e : feas.entries)
      out << inst.name << ",pair,L" << e.pair.left << "-R" << e.pair.right
          << ",," << (e.is_edge ? 1 : 0) << "," << format_g(e.lhs) << ",1,"
          << format_g(e.slack) << "," << format_g(e.se) << ","
          << (e.ok ? 1 : 0) << "\n";

    for (const Lemma3Entry& e : lem3.entries)
      out << inst.name << ",tuplepair," << tuple_id(e.rep) << ","
          << lemma3_case_name(e.case_label) << ",," << format_g(e.lhs) << ","
          << format_g(e.rhs) << "," << format_g(e.rhs - e.lhs) << ","
          << format_g(e.se) << "," << ((e.ok && e.equality_ok) ? 1 : 0)
          << "\n";

    std::uint64_t tuple_cost_total = 0;
    for (const auto& [key, agg] : stats.tuples) tuple_cost_total += agg.cost_sum;
    out << inst.name << ",summary,corollary_identity,,,"
        << tuple_cost_total << "," << stats.total_cost_sum << ","
        << (stats.total_cost_sum >= tuple_cost_total
                ? stats.total_cost_sum - tuple_cost_total
                : tuple_cost_total - stats.total_cost_sum)
        << ",0," << (tuple_cost_total == stats.total_cost_sum ? 1 : 0) << "\n";

    out << inst.name << ",summary,sum_beta,,," << format_g(feas.sum_beta)
        << ",";
    if (opt_info.present) {
      double bound = static_cast<double>(opt_info.value);
      bool ok = feas.sum_beta <=
                bound + cfg.sigma * feas.sum_beta_se + 1e-9;
      out << format_g(bound) << "," << format_g(bound - feas.sum_beta) << ","
          << format_g(feas.sum_beta_se) << "," << (ok ? 1 : 0) << "\n";
    } else {
      out << ",," << format_g(feas.sum_beta_se) << ",\n";
    }
  }
  return out.str();
}

}  // namespace

std::string run_experiment_csv(const ExperimentConfig& cfg) {
  std::vector<ExpandedInstance> instances = expand_instances(cfg);
  return cfg.mode == ExperimentConfig::Mode::Costs
             ? costs_csv(cfg, instances)
             : dualcheck_csv(cfg, instances);
}

}  // namespace bcc
