#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "bcc/exact.hpp"
#include "bcc/pivot.hpp"
#include "bcc/rng.hpp"

using namespace bcc;

namespace {

std::uint64_t bell(std::size_t n, std::size_t limit = 12) {
  return enumerate_partitions(n, [](const std::vector<std::uint32_t>&) {},
                              limit);
}

}  // namespace

TEST_CASE("partition enumeration visits each partition once") {
  CHECK(bell(0) == 1);
  CHECK(bell(1) == 1);
  CHECK(bell(2) == 2);
  CHECK(bell(3) == 5);
  CHECK(bell(4) == 15);
  CHECK(bell(10) == 115975);

  std::vector<std::vector<std::uint32_t>> seen;
  enumerate_partitions(3, [&](const std::vector<std::uint32_t>& a) {
    seen.push_back(a);
  });
  std::vector<std::vector<std::uint32_t>> expected{
      {0, 0, 0}, {0, 0, 1}, {0, 1, 0}, {0, 1, 1}, {0, 1, 2}};
  CHECK(seen == expected);

  // Every string is a valid restricted-growth string and all are distinct.
  std::set<std::vector<std::uint32_t>> uniq;
  enumerate_partitions(5, [&](const std::vector<std::uint32_t>& a) {
    std::uint32_t max_so_far = 0;
    CHECK(a[0] == 0);
    for (std::size_t i = 1; i < a.size(); ++i) {
      CHECK(a[i] <= max_so_far + 1);
      max_so_far = std::max(max_so_far, a[i]);
    }
    uniq.insert(a);
  });
  CHECK(uniq.size() == 52);

  CHECK_THROWS_WITH_AS(bell(13), doctest::Contains("exceeds limit"),
                       std::invalid_argument);
  CHECK(bell(13, 13) == 27644437);
}

TEST_CASE("opt on pinned instances") {
  BipartiteGraph square(2, 2, {{0, 0}, {0, 1}, {1, 0}});
  OptResult r = opt(square);
  CHECK(r.opt_cost == 1);
  CHECK(cost(square, r.witness).total == 1);

  CHECK(opt(BipartiteGraph(3, 3, {})).opt_cost == 0);
  CHECK(opt(gen_biclique_union({2, 3}, {2, 1})).opt_cost == 0);

  // Two disjoint bad squares: errors add per component.
  BipartiteGraph two(4, 4, {{0, 0}, {0, 1}, {1, 0}, {2, 2}, {2, 3}, {3, 2}});
  CHECK(opt(two).opt_cost == 2);
}

TEST_CASE("opt on the adversarial family") {
  CHECK(opt(gen_counterexample(2)).opt_cost == 0);
  CHECK(opt(gen_counterexample(3)).opt_cost == 2);
  CHECK(opt(gen_counterexample(4)).opt_cost == 4);
  CHECK(opt(gen_counterexample(5)).opt_cost == 5);
  CHECK(opt(gen_counterexample(6)).opt_cost == 6);
}

TEST_CASE("witness recovers planted bicliques at zero noise") {
  BipartiteGraph g = gen_biclique_union({2, 2, 1}, {1, 2, 2});
  OptResult r = opt(g);
  CHECK(r.opt_cost == 0);
  std::vector<std::uint32_t> li{0, 0, 1, 1, 2}, ri{0, 1, 1, 2, 2};
  CHECK(r.witness == Clustering(5, 5, li, ri));
}

TEST_CASE("component decomposition agrees with plain enumeration") {
  SplitMix64 rng(2024);
  for (int t = 0; t < 40; ++t) {
    BipartiteGraph g = gen_random(4, 4, 0.35, rng.next());
    OptResult fast = opt(g);
    OptResult slow = opt_exhaustive(g);
    CHECK(fast.opt_cost == slow.opt_cost);
    CHECK(cost(g, fast.witness).total == fast.opt_cost);
    CHECK(cost(g, slow.witness).total == slow.opt_cost);
    CHECK(fast.partitions_examined <= slow.partitions_examined);
  }

  // A disconnected instance must enumerate far fewer partitions.
  BipartiteGraph two(4, 4, {{0, 0}, {0, 1}, {1, 0}, {2, 2}, {2, 3}, {3, 2}});
  CHECK(opt(two).partitions_examined == 2 * 15);
  CHECK(opt_exhaustive(two).partitions_examined == 4140);
}

TEST_CASE("decomposition extends reach beyond the flat limit") {
  // 8 components of 2 nodes each: 16 nodes total, flat enumeration refuses.
  std::vector<std::size_t> ls(8, 1), rs(8, 1);
  BipartiteGraph g = gen_biclique_union(ls, rs);
  CHECK(opt(g).opt_cost == 0);
  CHECK_THROWS_AS(opt_exhaustive(g), std::invalid_argument);
}

TEST_CASE("opt lower-bounds every clustering") {
  SplitMix64 rng(606);
  for (int t = 0; t < 30; ++t) {
    BipartiteGraph g = gen_random(5, 5, 0.5, rng.next());
    std::size_t best = opt(g).opt_cost;
    CHECK(best <= cost(g, run_pivot(g, rng.next()).clustering).total);
    CHECK(best <= cost(g, Clustering::singletons(5, 5)).total);
    CHECK(best <= cost(g, Clustering::all_in_one(5, 5)).total);
  }
}

TEST_CASE("witness is normalized") {
  SplitMix64 rng(11);
  for (int t = 0; t < 20; ++t) {
    BipartiteGraph g = gen_random(4, 5, 0.4, rng.next());
    Clustering w = opt(g).witness;
    CHECK(normalize(w) == w);
  }
}
