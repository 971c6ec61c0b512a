#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "bcc/clustering.hpp"
#include "bcc/graph.hpp"

namespace bcc {

inline constexpr std::size_t kDefaultPartitionLimit = 12;

// Visits every set partition of {0..n-1} exactly once as a restricted-growth
// string, in lexicographic order. Returns the number of partitions visited
// (the Bell number B(n)). n = 0 visits the single empty partition.
template <typename Visitor>
std::uint64_t enumerate_partitions(std::size_t n, Visitor&& visit,
                                   std::size_t limit = kDefaultPartitionLimit) {
  if (n > limit)
    throw std::invalid_argument("partition enumeration refused: n = " +
                                std::to_string(n) + " exceeds limit " +
                                std::to_string(limit));
  std::vector<std::uint32_t> a(n, 0);
  // prefix_max[i] = max(a[0..i]); a[i] may grow up to prefix_max[i-1] + 1.
  std::vector<std::uint32_t> prefix_max(n, 0);
  std::uint64_t visited = 0;
  for (;;) {
    visit(static_cast<const std::vector<std::uint32_t>&>(a));
    ++visited;
    // Rightmost position whose digit can still grow.
    std::size_t i = n;
    bool found = false;
    while (i > 1) {
      --i;
      if (a[i] <= prefix_max[i - 1]) {
        found = true;
        break;
      }
    }
    if (!found) break;
    ++a[i];
    prefix_max[i] = std::max(prefix_max[i - 1], a[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      a[j] = 0;
      prefix_max[j] = prefix_max[j - 1];
    }
  }
  return visited;
}

struct OptResult {
  std::size_t opt_cost;
  Clustering witness;
  std::uint64_t partitions_examined;
};

// Minimum symmetric-difference cost over all clusterings. Enumerates set
// partitions per connected component (so the limit applies to the largest
// component, not to |L|+|R|); ties break toward the lexicographically
// smallest restricted-growth string.
OptResult opt(const BipartiteGraph& g,
              std::size_t limit = kDefaultPartitionLimit);

// Reference path without component decomposition; |L|+|R| <= limit required.
OptResult opt_exhaustive(const BipartiteGraph& g,
                         std::size_t limit = kDefaultPartitionLimit);

}  // namespace bcc
