#pragma once

#include <cstdint>

#include "bcc/clustering.hpp"
#include "bcc/graph.hpp"

namespace bcc {

// The earlier pivot heuristic this library's main algorithm improves on.
// Each phase: uniform pivot from the remaining left nodes, cluster = pivot
// plus its current right neighborhood; every other remaining left node with
// at least one neighbor in the cluster joins with probability 1/2, except
// nodes whose current neighborhood equals the pivot's, which join with
// probability 1. One coin per candidate in ascending index order, consumed
// whether or not the decision is forced. Unbounded approximation ratio on
// gen_counterexample.
Clustering run_ghkz(const BipartiteGraph& g, std::uint64_t seed);

}  // namespace bcc
