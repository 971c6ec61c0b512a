#include "bcc/exact.hpp"

#include <algorithm>
#include <bit>
#include <queue>

namespace bcc {

namespace {

struct Component {
  std::vector<std::uint32_t> lefts;   // ascending
  std::vector<std::uint32_t> rights;  // ascending
};

std::vector<Component> connected_components(const BipartiteGraph& g) {
  const std::size_t nl = g.n_left(), nr = g.n_right();
  // Transposed adjacency for right-to-left steps.
  std::vector<BitRow> cols(nr, BitRow(nl));
  for (std::size_t l = 0; l < nl; ++l)
    g.neighbors(l).for_each_set([&](std::size_t r) { cols[r].set(l); });

  std::vector<bool> seen(nl + nr, false);
  std::vector<Component> comps;
  for (std::size_t start = 0; start < nl + nr; ++start) {
    if (seen[start]) continue;
    Component comp;
    std::queue<std::size_t> bfs;
    bfs.push(start);
    seen[start] = true;
    while (!bfs.empty()) {
      std::size_t v = bfs.front();
      bfs.pop();
      if (v < nl) {
        comp.lefts.push_back(static_cast<std::uint32_t>(v));
        g.neighbors(v).for_each_set([&](std::size_t r) {
          if (!seen[nl + r]) {
            seen[nl + r] = true;
            bfs.push(nl + r);
          }
        });
      } else {
        comp.rights.push_back(static_cast<std::uint32_t>(v - nl));
        cols[v - nl].for_each_set([&](std::size_t l) {
          if (!seen[l]) {
            seen[l] = true;
            bfs.push(l);
          }
        });
      }
    }
    std::sort(comp.lefts.begin(), comp.lefts.end());
    std::sort(comp.rights.begin(), comp.rights.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

struct LocalOpt {
  std::size_t cost;
  std::vector<std::uint32_t> rgs;  // over lefts then rights
  std::uint64_t examined;
};

// Brute force over one node set (lefts then rights), word-mask cost
// evaluation. Requires rights.size() <= 64.
LocalOpt solve_nodes(const BipartiteGraph& g,
                     const std::vector<std::uint32_t>& lefts,
                     const std::vector<std::uint32_t>& rights,
                     std::size_t limit) {
  const std::size_t k = lefts.size() + rights.size();
  if (rights.size() > 64)
    throw std::invalid_argument("exact solver supports at most 64 right nodes");
  std::vector<std::uint64_t> adj(lefts.size(), 0);
  for (std::size_t i = 0; i < lefts.size(); ++i)
    for (std::size_t j = 0; j < rights.size(); ++j)
      if (g.neighbors(lefts[i]).test(rights[j]))
        adj[i] |= std::uint64_t(1) << j;

  LocalOpt best{static_cast<std::size_t>(-1), {}, 0};
  std::vector<std::uint64_t> right_mask(k == 0 ? 1 : k, 0);
  best.examined = enumerate_partitions(
      k,
      [&](const std::vector<std::uint32_t>& a) {
        for (auto& m : right_mask) m = 0;
        for (std::size_t j = 0; j < rights.size(); ++j)
          right_mask[a[lefts.size() + j]] |= std::uint64_t(1) << j;
        std::size_t c = 0;
        for (std::size_t i = 0; i < lefts.size(); ++i)
          c += static_cast<std::size_t>(
              std::popcount(adj[i] ^ right_mask[a[i]]));
        if (c < best.cost) {
          best.cost = c;
          best.rgs = a;
        }
      },
      limit);
  return best;
}

}  // namespace

OptResult opt(const BipartiteGraph& g, std::size_t limit) {
  const std::size_t nl = g.n_left(), nr = g.n_right();
  std::vector<std::uint32_t> left_ids(nl, 0), right_ids(nr, 0);
  std::size_t total_cost = 0;
  std::uint64_t examined = 0;
  std::uint32_t offset = 0;
  for (const Component& comp : connected_components(g)) {
    LocalOpt local = solve_nodes(g, comp.lefts, comp.rights, limit);
    total_cost += local.cost;
    examined += local.examined;
    std::uint32_t width = 0;
    for (std::size_t pos = 0; pos < local.rgs.size(); ++pos) {
      std::uint32_t id = offset + local.rgs[pos];
      width = std::max(width, local.rgs[pos] + 1);
      if (pos < comp.lefts.size())
        left_ids[comp.lefts[pos]] = id;
      else
        right_ids[comp.rights[pos - comp.lefts.size()]] = id;
    }
    offset += width;
  }
  Clustering witness =
      normalize(Clustering(nl, nr, std::move(left_ids), std::move(right_ids)));
  return {total_cost, std::move(witness), examined};
}

OptResult opt_exhaustive(const BipartiteGraph& g, std::size_t limit) {
  const std::size_t nl = g.n_left(), nr = g.n_right();
  std::vector<std::uint32_t> lefts(nl), rights(nr);
  for (std::uint32_t i = 0; i < nl; ++i) lefts[i] = i;
  for (std::uint32_t j = 0; j < nr; ++j) rights[j] = j;
  LocalOpt best = solve_nodes(g, lefts, rights, limit);
  std::vector<std::uint32_t> left_ids(best.rgs.begin(),
                                      best.rgs.begin() + nl);
  std::vector<std::uint32_t> right_ids(best.rgs.begin() + nl, best.rgs.end());
  Clustering witness =
      normalize(Clustering(nl, nr, std::move(left_ids), std::move(right_ids)));
  return {best.cost, std::move(witness), best.examined};
}

}  // namespace bcc
