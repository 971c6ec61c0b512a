#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bcc/pivot.hpp"
#include "bcc/rng.hpp"

using namespace bcc;

namespace {

BipartiteGraph bad_square() {
  return BipartiteGraph(2, 2, {{0, 0}, {0, 1}, {1, 0}});
}

std::size_t event_cost(const TupleEvent& ev,
                       const std::vector<BitRow>& err) {
  return ev.colored.count_and(err[ev.key.l2]);
}

std::size_t closed_form_cost(const TupleEvent& ev) {
  std::size_t r1 = ev.key.r1.count();
  std::size_t r12 = ev.key.r12.count();
  std::size_t r2 = ev.key.r2.count();
  switch (ev.decision) {
    case Decision::Join: return r1 + r2;
    case Decision::Singleton: return r12 + r2;
    case Decision::Defer: return r12;
  }
  return 0;
}

}  // namespace

TEST_CASE("decide_ell2 follows the merge probability") {
  // r12 > 0, r2 = 0: p = 1, and r12 >= r1 means Join.
  CHECK(decide_ell2(1, 1, 0, 0.99) == Decision::Join);
  CHECK(decide_ell2(0, 3, 0, 0.0) == Decision::Join);
  // r12 < r1 under the merge branch: Singleton.
  CHECK(decide_ell2(2, 1, 0, 0.5) == Decision::Singleton);
  // p = min(r12/r2, 1) = 0.5 here; u straddles it.
  CHECK(decide_ell2(3, 1, 2, 0.49) == Decision::Singleton);
  CHECK(decide_ell2(3, 1, 2, 0.51) == Decision::Defer);
  CHECK(decide_ell2(0, 1, 2, 0.49) == Decision::Join);
  // r12 = 0: p = 0, always Defer.
  CHECK(decide_ell2(5, 0, 7, 0.0) == Decision::Defer);
  CHECK(decide_ell2(0, 0, 0, 0.0) == Decision::Defer);
  // r12 >= r2: p = 1.
  CHECK(decide_ell2(1, 3, 2, 0.999) == Decision::Join);

  CHECK(std::string(decision_name(Decision::Join)) == "join");
  CHECK(std::string(decision_name(Decision::Singleton)) == "singleton");
  CHECK(std::string(decision_name(Decision::Defer)) == "defer");
}

TEST_CASE("runs are deterministic in the seed") {
  BipartiteGraph g = gen_random(8, 9, 0.4, 17);
  PivotResult a = run_pivot(g, 123);
  PivotResult b = run_pivot(g, 123);
  CHECK(a.clustering == b.clustering);
  CHECK(serialize_trace(a.trace) == serialize_trace(b.trace));
  PivotResult c = run_pivot(g, 124);
  CHECK(serialize_trace(a.trace) != serialize_trace(c.trace));
}

TEST_CASE("phase application order does not change the partition") {
  SplitMix64 rng(5150);
  for (int t = 0; t < 60; ++t) {
    BipartiteGraph g = gen_random(7, 7, 0.5, rng.next());
    std::uint64_t seed = rng.next();
    PivotResult plain = run_pivot(g, seed);
    PivotResult shuffled = run_pivot_shuffled(g, seed, rng.next());
    CHECK(plain.clustering == shuffled.clustering);
  }
}

TEST_CASE("output is normalized and exact on unions of bicliques") {
  BipartiteGraph bu = gen_biclique_union({2, 3, 1}, {2, 1, 2});
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    PivotResult res = run_pivot(bu, seed);
    CHECK(cost(bu, res.clustering).total == 0);
  }

  SplitMix64 rng(8181);
  for (int t = 0; t < 40; ++t) {
    BipartiteGraph g = gen_random(6, 6, 0.5, rng.next());
    Clustering c = run_pivot(g, rng.next()).clustering;
    std::vector<std::size_t> left_count(c.n_clusters(), 0),
        right_count(c.n_clusters(), 0);
    for (std::size_t i = 0; i < 6; ++i) ++left_count[c.left_cluster(i)];
    for (std::size_t j = 0; j < 6; ++j) ++right_count[c.right_cluster(j)];
    for (std::size_t k = 0; k < c.n_clusters(); ++k) {
      std::size_t members = left_count[k] + right_count[k];
      CHECK(members >= 1);
      if (members > 1) {
        CHECK(left_count[k] >= 1);
        CHECK(right_count[k] >= 1);
      }
    }
  }
}

TEST_CASE("bad square costs exactly one on every run") {
  BipartiteGraph g = bad_square();
  for (std::uint64_t seed = 0; seed < 200; ++seed)
    CHECK(cost(g, run_pivot(g, seed).clustering).total == 1);
}

TEST_CASE("adversarial family costs exactly 2n-2 on every run") {
  for (std::size_t n : {3, 4, 10, 25}) {
    BipartiteGraph g = gen_counterexample(n);
    for (std::uint64_t seed = 0; seed < 50; ++seed)
      CHECK(cost(g, run_pivot(g, seed).clustering).total == 2 * n - 2);
  }
  BipartiteGraph g2 = gen_counterexample(2);
  for (std::uint64_t seed = 0; seed < 20; ++seed)
    CHECK(cost(g2, run_pivot(g2, seed).clustering).total == 0);
}

TEST_CASE("per-event colored error counts match the closed forms") {
  SplitMix64 rng(9090);
  for (int t = 0; t < 50; ++t) {
    BipartiteGraph g = gen_random(7, 6, 0.45, rng.next());
    PivotResult res = run_pivot(g, rng.next());
    std::vector<BitRow> err = erroneous_rows(g, res.clustering);
    std::size_t total = 0;
    for (const Phase& ph : res.trace.phases)
      for (const TupleEvent& ev : ph.events) {
        CHECK(event_cost(ev, err) == closed_form_cost(ev));
        total += event_cost(ev, err);
      }
    CHECK(total == cost(g, res.clustering).total);
  }
}

TEST_CASE("traces pass verification; tampered traces fail") {
  SplitMix64 rng(777);
  for (int t = 0; t < 60; ++t) {
    BipartiteGraph g = gen_random(6, 8, 0.5, rng.next());
    PivotResult res = run_pivot(g, rng.next());
    TraceVerdict v = verify_trace(g, res.clustering, res.trace);
    CHECK(v.ok);
    CHECK(v.message == "ok");
  }

  // Duplicating an event colors its pairs twice.
  BipartiteGraph g = gen_counterexample(4);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    PivotResult res = run_pivot(g, seed);
    Trace bad = res.trace;
    bool tampered = false;
    for (Phase& ph : bad.phases)
      for (std::size_t i = 0; i < ph.events.size() && !tampered; ++i)
        if (ph.events[i].colored.any()) {
          ph.events.push_back(ph.events[i]);
          tampered = true;
        }
    if (!tampered) continue;
    TraceVerdict v = verify_trace(g, res.clustering, bad);
    CHECK_FALSE(v.ok);
    CHECK(v.message.find("twice") != std::string::npos);
  }

  // Dropping all events leaves erroneous pairs uncolored.
  PivotResult res = run_pivot(bad_square(), 3);
  Trace empty;
  TraceVerdict v = verify_trace(bad_square(), res.clustering, empty);
  CHECK_FALSE(v.ok);
  CHECK(v.message.find("never colored") != std::string::npos);
}

TEST_CASE("trace serialization format") {
  BitRow r1(4), r12(4), r2(4), colored(4);
  r1.set(1);
  r12.set(0);
  colored.set(0);
  colored.set(1);
  TupleEvent ev{TupleKey{0, 1, r1, r12, r2}, Decision::Singleton, colored};
  Trace t;
  t.phases.push_back(Phase{0, {ev}});
  CHECK(serialize_trace(t) == "0 1 1 1 0 singleton 2\n");

  BitRow r2b(4);
  r2b.set(2);
  r2b.set(3);
  TupleEvent ev2{TupleKey{2, 3, BitRow(4), r12, r2b}, Decision::Defer,
                 r12};
  t.phases.push_back(Phase{2, {ev2}});
  CHECK(serialize_trace(t) ==
        "0 1 1 1 0 singleton 2\n"
        "2 3 0 1 2 defer 1\n");
}
