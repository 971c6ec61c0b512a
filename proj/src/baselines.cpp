#include "bcc/baselines.hpp"

#include "bcc/rng.hpp"

namespace bcc {

Clustering run_ghkz(const BipartiteGraph& g, std::uint64_t seed) {
  const std::size_t nl = g.n_left(), nr = g.n_right();
  SplitMix64 rng(seed);
  BitRow alive_left = BitRow::full(nl);
  BitRow alive_right = BitRow::full(nr);

  constexpr std::uint32_t kUnassigned = ~std::uint32_t(0);
  std::vector<std::uint32_t> left_ids(nl, kUnassigned),
      right_ids(nr, kUnassigned);
  std::uint32_t next_id = 0;

  while (alive_left.any()) {
    std::vector<std::uint32_t> alive = alive_left.to_indices();
    std::uint32_t pivot = alive[rng.next_below(alive.size())];
    BitRow cluster_right = g.neighbors(pivot) & alive_right;

    std::vector<std::uint32_t> joined{pivot};
    for (std::uint32_t l2 : alive) {
      if (l2 == pivot) continue;
      BitRow nb = g.neighbors(l2) & alive_right;
      double u = rng.next_unit();
      bool shares = nb.count_and(cluster_right) > 0;
      if (shares && (nb == cluster_right || u < 0.5)) joined.push_back(l2);
    }

    std::uint32_t cid = next_id++;
    for (std::uint32_t l : joined) {
      left_ids[l] = cid;
      alive_left.reset(l);
    }
    cluster_right.for_each_set([&](std::size_t r) { right_ids[r] = cid; });
    alive_right.and_not(cluster_right);
  }
  for (std::size_t r = 0; r < nr; ++r)
    if (right_ids[r] == kUnassigned) right_ids[r] = next_id++;

  return normalize(
      Clustering(nl, nr, std::move(left_ids), std::move(right_ids)));
}

}  // namespace bcc
