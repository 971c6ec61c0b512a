#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "bcc/graph.hpp"

namespace bcc {

// Partition of L u R into clusters. Ids are canonicalized to dense integers in
// first-seen order over L0..L(n_left-1), R0..R(n_right-1), so equal partitions
// compare equal regardless of the ids they were built with.
class Clustering {
 public:
  Clustering(std::size_t n_left, std::size_t n_right,
             std::vector<std::uint32_t> left_ids,
             std::vector<std::uint32_t> right_ids);

  static Clustering singletons(std::size_t n_left, std::size_t n_right);
  static Clustering all_in_one(std::size_t n_left, std::size_t n_right);

  std::size_t n_left() const { return n_left_; }
  std::size_t n_right() const { return n_right_; }
  std::size_t n_clusters() const { return n_clusters_; }

  std::uint32_t left_cluster(std::size_t i) const { return left_ids_[i]; }
  std::uint32_t right_cluster(std::size_t j) const { return right_ids_[j]; }

  // Right members of cluster c as a bit row over right indices.
  BitRow right_members(std::uint32_t c) const;
  std::vector<std::uint32_t> left_members(std::uint32_t c) const;

  bool operator==(const Clustering&) const = default;

 private:
  std::size_t n_left_;
  std::size_t n_right_;
  std::size_t n_clusters_;
  std::vector<std::uint32_t> left_ids_;
  std::vector<std::uint32_t> right_ids_;
};

struct CostReport {
  std::size_t total;
  std::size_t cut_edges;      // edges of G between different clusters
  std::size_t missing_pairs;  // same-cluster pairs that are not edges
};

// Per-left-node bit rows marking the right nodes sharing that node's cluster.
std::vector<BitRow> membership_rows(const Clustering& b);

// |E delta E_B| split into its two parts. Throws if shapes differ.
CostReport cost(const BipartiteGraph& g, const Clustering& b);

// Row-major list of the pairs the clustering errs on.
std::vector<Pair> erroneous_pairs(const BipartiteGraph& g, const Clustering& b);

// neighbors(l) XOR membership row of l: bit r set iff (l, r) is erroneous.
std::vector<BitRow> erroneous_rows(const BipartiteGraph& g,
                                   const Clustering& b);

// Splits every cluster whose members all lie on one side into singletons.
// Idempotent; never changes cost.
Clustering normalize(const Clustering& b);

// One line per multi-node cluster, tokens "L<i>" / "R<j>"; unlisted nodes are
// singletons.
std::string format_clustering(const Clustering& b);
Clustering parse_clustering(const std::string& text, std::size_t n_left,
                            std::size_t n_right);

}  // namespace bcc
