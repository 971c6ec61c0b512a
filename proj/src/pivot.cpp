#include "bcc/pivot.hpp"

#include <sstream>

#include "bcc/rng.hpp"

namespace bcc {

Decision decide_ell2(std::size_t r1, std::size_t r12, std::size_t r2,
                     double u) {
  double p;
  if (r12 == 0)
    p = 0.0;
  else if (r2 == 0)
    p = 1.0;
  else
    p = std::min(static_cast<double>(r12) / static_cast<double>(r2), 1.0);
  if (u < p) return r12 >= r1 ? Decision::Join : Decision::Singleton;
  return Decision::Defer;
}

const char* decision_name(Decision d) {
  switch (d) {
    case Decision::Join: return "join";
    case Decision::Singleton: return "singleton";
    default: return "defer";
  }
}

namespace {

struct PhaseOutcome {
  Phase phase;
  std::vector<std::uint32_t> joined;      // pivot first
  std::vector<std::uint32_t> singletons;  // ascending l2 order
  BitRow cluster_right;
};

// Runs one phase against the phase-start live state. Decisions are computed
// for every other alive l2 in ascending order; `apply_order` only permutes the
// order in which they are recorded and applied.
PhaseOutcome run_phase(const BipartiteGraph& g, const BitRow& alive_right,
                       SplitMix64& rng,
                       const std::vector<std::uint32_t>& alive,
                       std::uint32_t pivot,
                       const std::vector<std::size_t>& apply_order) {
  PhaseOutcome out;
  out.phase.pivot = pivot;
  out.cluster_right = g.neighbors(pivot) & alive_right;
  out.joined.push_back(pivot);

  struct Pending {
    std::uint32_t l2;
    TupleKey key;
    Decision decision;
  };
  std::vector<Pending> pending;
  pending.reserve(alive.size() - 1);
  for (std::uint32_t l2 : alive) {
    if (l2 == pivot) continue;
    BitRow nb2 = g.neighbors(l2) & alive_right;
    BitRow r12 = out.cluster_right & nb2;
    BitRow r1 = and_not(out.cluster_right, nb2);
    BitRow r2 = and_not(nb2, out.cluster_right);
    double u = rng.next_unit();
    Decision d = decide_ell2(r1.count(), r12.count(), r2.count(), u);
    pending.push_back({l2, TupleKey{pivot, l2, std::move(r1), std::move(r12),
                                    std::move(r2)}, d});
  }

  for (std::size_t idx : apply_order) {
    Pending& p = pending[idx];
    BitRow colored = p.key.r1 | p.key.r12;
    if (p.decision != Decision::Defer) colored |= p.key.r2;
    if (p.decision == Decision::Join) out.joined.push_back(p.l2);
    else if (p.decision == Decision::Singleton) out.singletons.push_back(p.l2);
    out.phase.events.push_back(
        {std::move(p.key), p.decision, std::move(colored)});
  }
  return out;
}

PivotResult run_pivot_impl(const BipartiteGraph& g, std::uint64_t seed,
                           const std::uint64_t* order_seed) {
  const std::size_t nl = g.n_left(), nr = g.n_right();
  SplitMix64 rng(seed);
  BitRow alive_left = BitRow::full(nl);
  BitRow alive_right = BitRow::full(nr);

  constexpr std::uint32_t kUnassigned = ~std::uint32_t(0);
  std::vector<std::uint32_t> left_ids(nl, kUnassigned), right_ids(nr, kUnassigned);
  std::uint32_t next_id = 0;

  Trace trace;
  while (alive_left.any()) {
    std::vector<std::uint32_t> alive = alive_left.to_indices();
    std::uint32_t pivot = alive[rng.next_below(alive.size())];

    std::vector<std::size_t> order(alive.size() - 1);
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    if (order_seed) {
      SplitMix64 order_rng(derive_seed(*order_seed, trace.phases.size()));
      for (std::size_t k = order.size(); k > 1; --k)
        std::swap(order[k - 1], order[order_rng.next_below(k)]);
    }

    PhaseOutcome out =
        run_phase(g, alive_right, rng, alive, pivot, order);

    std::uint32_t cid = next_id++;
    for (std::uint32_t l : out.joined) {
      left_ids[l] = cid;
      alive_left.reset(l);
    }
    out.cluster_right.for_each_set([&](std::size_t r) {
      right_ids[r] = cid;
    });
    alive_right.and_not(out.cluster_right);
    for (std::uint32_t l : out.singletons) {
      left_ids[l] = next_id++;
      alive_left.reset(l);
    }
    trace.phases.push_back(std::move(out.phase));
  }
  for (std::size_t r = 0; r < nr; ++r)
    if (right_ids[r] == kUnassigned) right_ids[r] = next_id++;

  Clustering raw(nl, nr, std::move(left_ids), std::move(right_ids));
  return {normalize(raw), std::move(trace)};
}

}  // namespace

PivotResult run_pivot(const BipartiteGraph& g, std::uint64_t seed) {
  return run_pivot_impl(g, seed, nullptr);
}

PivotResult run_pivot_shuffled(const BipartiteGraph& g, std::uint64_t seed,
                               std::uint64_t order_seed) {
  return run_pivot_impl(g, seed, &order_seed);
}

TraceVerdict verify_trace(const BipartiteGraph& g, const Clustering& c,
                          const Trace& t) {
  const std::size_t nr = g.n_right();
  // colors[l*nr + r] = 1 + index of the first event coloring the pair.
  std::vector<std::uint32_t> colors(g.n_left() * nr, 0);
  std::vector<std::string> event_desc;
  std::uint32_t event_no = 0;
  for (const Phase& ph : t.phases) {
    for (const TupleEvent& ev : ph.events) {
      ++event_no;
      bool clash = false;
      std::uint32_t clash_r = 0;
      ev.colored.for_each_set([&](std::size_t r) {
        std::uint32_t& slot = colors[ev.key.l2 * nr + r];
        if (slot != 0 && !clash) {
          clash = true;
          clash_r = static_cast<std::uint32_t>(r);
        } else if (slot == 0) {
          slot = event_no;
        }
      });
      if (clash) {
        std::uint32_t first = colors[ev.key.l2 * nr + clash_r];
        std::ostringstream msg;
        msg << "pair (L" << ev.key.l2 << ", R" << clash_r
            << ") colored twice: by " << event_desc[first - 1]
            << " and by event " << event_no << " (pivot " << ph.pivot
            << ", l2 " << ev.key.l2 << ")";
        return {false, msg.str()};
      }
      std::ostringstream desc;
      desc << "event " << event_no << " (pivot " << ph.pivot << ", l2 "
           << ev.key.l2 << ")";
      event_desc.push_back(desc.str());
    }
  }
  for (const Pair& e : erroneous_pairs(g, c)) {
    if (colors[e.left * nr + e.right] == 0) {
      std::ostringstream msg;
      msg << "erroneous pair (L" << e.left << ", R" << e.right
          << ") was never colored";
      return {false, msg.str()};
    }
  }
  return {true, "ok"};
}

std::string serialize_trace(const Trace& t) {
  std::ostringstream out;
  for (const Phase& ph : t.phases)
    for (const TupleEvent& ev : ph.events)
      out << ph.pivot << " " << ev.key.l2 << " " << ev.key.r1.count() << " "
          << ev.key.r12.count() << " " << ev.key.r2.count() << " "
          << decision_name(ev.decision) << " " << ev.colored.count() << "\n";
  return out.str();
}

}  // namespace bcc
