#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bcc/bitrow.hpp"

namespace bcc {

enum class Side { Left, Right };

struct NodeId {
  Side side;
  std::uint32_t index;
  bool operator==(const NodeId&) const = default;
};

// An element of L x R. Cost accrues only on pairs.
struct Pair {
  std::uint32_t left;
  std::uint32_t right;
  bool operator==(const Pair&) const = default;
  auto operator<=>(const Pair&) const = default;
};

using EdgeList = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

// Immutable bipartite graph. Row l is the neighborhood N(l) as a bit row over
// right indices.
class BipartiteGraph {
 public:
  // Duplicate edges in the input are collapsed; out-of-range indices throw.
  BipartiteGraph(std::size_t n_left, std::size_t n_right, const EdgeList& edges);

  std::size_t n_left() const { return n_left_; }
  std::size_t n_right() const { return n_right_; }
  std::size_t n_edges() const { return n_edges_; }

  const BitRow& neighbors(std::size_t l) const;
  bool has_edge(std::size_t l, std::size_t r) const;

  // Row-major sorted edge list.
  std::vector<Pair> edges() const;

  bool operator==(const BipartiteGraph&) const = default;

 private:
  std::size_t n_left_;
  std::size_t n_right_;
  std::size_t n_edges_;
  std::vector<BitRow> rows_;
};

// Each pair present independently with probability p; unit draws consumed in
// row-major pair order.
BipartiteGraph gen_random(std::size_t n_left, std::size_t n_right, double p,
                          std::uint64_t seed);

// Disjoint complete bi-cliques laid out block by block. Cluster i spans
// left_sizes[i] consecutive left nodes and right_sizes[i] consecutive right
// nodes.
BipartiteGraph gen_biclique_union(const std::vector<std::size_t>& left_sizes,
                                  const std::vector<std::size_t>& right_sizes);

// Bi-clique union with every pair flipped independently with probability eps.
BipartiteGraph gen_planted(const std::vector<std::size_t>& left_sizes,
                           const std::vector<std::size_t>& right_sizes,
                           double eps, std::uint64_t seed);

// n x n adversarial family: edge (i, j) present iff i != j.
BipartiteGraph gen_counterexample(std::size_t n);

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Strict parser for the "bcc" text format:
//   bcc <n_left> <n_right> <n_edges>
//   <l> <r>          (one line per edge, 0-based)
// '#' starts a comment line; blank lines are skipped. Duplicate edges, count
// mismatches, and out-of-range indices are errors carrying the line number.
BipartiteGraph parse_graph(const std::string& text);

// Canonical form: header then edges in row-major sorted order.
std::string serialize_graph(const BipartiteGraph& g);

}  // namespace bcc
