#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "bcc/clustering.hpp"
#include "bcc/graph.hpp"

namespace bcc {

enum class Decision { Join, Singleton, Defer };

// The per-l2 choice. Let p = 0 if r12 = 0; p = 1 if r12 > 0 and r2 = 0; else
// p = min(r12/r2, 1). With u < p: Join when r12 >= r1, Singleton otherwise.
// Else Defer.
Decision decide_ell2(std::size_t r1, std::size_t r12, std::size_t r2,
                     double u);

const char* decision_name(Decision d);

// Tuple T = (l1, l2, R1, R12, R2): R1 = N(l1)\N(l2), R12 = N(l1) n N(l2),
// R2 = N(l2)\N(l1), neighborhoods restricted to the live right set at the
// moment l1 became the pivot.
struct TupleKey {
  std::uint32_t l1;
  std::uint32_t l2;
  BitRow r1;
  BitRow r12;
  BitRow r2;
  bool operator==(const TupleKey&) const = default;
  auto operator<=>(const TupleKey&) const = default;
};

// One bad event. colored holds right indices r such that the pair (l2, r) is
// colored with this event's color: always R1 u R12, plus R2 unless deferred.
struct TupleEvent {
  TupleKey key;
  Decision decision;
  BitRow colored;
};

struct Phase {
  std::uint32_t pivot;
  std::vector<TupleEvent> events;
};

struct Trace {
  std::vector<Phase> phases;
};

struct PivotResult {
  Clustering clustering;
  Trace trace;
};

// One full PivotBiCluster run. Randomness contract: one uniform index draw
// for the pivot, then one unit draw per other alive left node in ascending
// index order (consumed even when the decision is forced). Removals apply
// atomically at phase end; leftover right nodes become singletons; the output
// is normalized.
PivotResult run_pivot(const BipartiteGraph& g, std::uint64_t seed);

// Identical draws to run_pivot, but each phase's decisions are applied in a
// shuffled l2 order. Exercises the order-independence of phase-start
// evaluation; must produce the same partition.
PivotResult run_pivot_shuffled(const BipartiteGraph& g, std::uint64_t seed,
                               std::uint64_t order_seed);

struct TraceVerdict {
  bool ok;
  std::string message;
};

// Checks the coloring guarantees on a finished run: no pair colored twice,
// and every pair the output errs on colored exactly once.
TraceVerdict verify_trace(const BipartiteGraph& g, const Clustering& c,
                          const Trace& t);

// One event per line: pivot, l2, |R1|, |R12|, |R2|, decision, colored count.
std::string serialize_trace(const Trace& t);

}  // namespace bcc
