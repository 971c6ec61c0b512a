#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bcc/clustering.hpp"
#include "bcc/graph.hpp"
#include "bcc/pivot.hpp"

namespace bcc {

// Two left and two right nodes spanning exactly three edges. Every clustering
// errs on at least one of the four pairs, so pair-disjoint squares give an
// additive lower bound on OPT.
struct BadSquare {
  std::uint32_t la, lb;  // la < lb
  std::uint32_t ra, rb;  // ra < rb
  Pair missing;          // the unique absent pair among the four
  std::array<Pair, 4> pairs() const {
    return {Pair{la, ra}, Pair{la, rb}, Pair{lb, ra}, Pair{lb, rb}};
  }
};

// All bad squares, ordered by (la, lb, ra, rb).
std::vector<BadSquare> enumerate_bad_squares(const BipartiteGraph& g);

// Size of a first-fit collection of pair-disjoint bad squares, taken in
// canonical order. Always <= square_lp_bound <= OPT.
std::size_t packing_bound(const BipartiteGraph& g);

inline constexpr std::size_t kMaxLpSquares = 20000;
inline constexpr std::size_t kMaxLpVariables = 4096;

// Optimum of: min sum_e x(e) s.t. x(square) >= 1 for every bad square,
// x >= 0. Variables are the pairs covered by at least one square; everything
// else is 0 at the optimum. Refuses oversized inputs; throws on simplex
// failure (the anti-cycling rule should make that unreachable).
double square_lp_bound(const BipartiteGraph& g);

// T_bar = (l2, l1, R2, R12, R1); an involution.
TupleKey conjugate(const TupleKey& t);

struct TupleAgg {
  std::uint64_t count = 0;
  std::uint64_t cost_sum = 0;     // sum of |colored n erroneous| over events
  std::uint64_t cost_sq_sum = 0;  // sum of squares of the same
};

// Monte-Carlo aggregates over seeded PivotBiCluster runs. Beyond the per-
// tuple moments, per-run accumulators are kept for every quantity the +-3SE
// checks need: the dual-constraint LHS of each pair and the per-run beta
// mass (sum over the run's events of alpha * min(|R12|, |R2|)).
struct TupleStats {
  std::uint64_t runs = 0;
  std::size_t n_left = 0;
  std::size_t n_right = 0;
  std::map<TupleKey, TupleAgg> tuples;
  std::uint64_t total_cost_sum = 0;       // sum of cost(g, output) over runs
  std::vector<double> lhs_sum;            // per pair, index l * n_right + r
  std::vector<double> lhs_sq_sum;
  double beta_mass_sum = 0.0;
  double beta_mass_sq_sum = 0.0;

  double q_hat(const TupleKey& t) const;
  double mean_cost(const TupleKey& t) const;
  void merge(const TupleStats& other);
};

// `runs` independent runs with per-run seeds derived from `seed`; the result
// is independent of `workers` up to floating-point summation grouping.
TupleStats estimate_tuple_stats(const BipartiteGraph& g, std::uint64_t runs,
                                std::uint64_t seed, unsigned workers = 1);

// alpha_T = min{1, |R12| / (min{|R12|,|R1|} + min{|R12|,|R2|})}, with
// alpha = 0 when R12 is empty and alpha = 1 when the denominator vanishes
// with R12 nonempty.
double alpha_value(std::size_t r1, std::size_t r12, std::size_t r2);

struct DualEntry {
  double alpha;
  double beta;  // alpha * q_hat * min(|R12|, |R2|)
};

struct DualSolution {
  std::map<TupleKey, DualEntry> entries;
  double objective;  // sum of beta
};

DualSolution dual_solution(const TupleStats& stats);

struct SlackEntry {
  Pair pair;
  bool is_edge;
  double lhs;    // constraint value; feasible means lhs <= 1
  double slack;  // 1 - lhs
  double se;
  bool ok;       // slack >= -sigma * se (minus a tiny absolute epsilon)
};

struct FeasibilityReport {
  std::vector<SlackEntry> entries;  // row-major pair order
  double sum_beta;
  double sum_beta_se;
  bool all_ok;
};

FeasibilityReport check_dual_feasibility(const BipartiteGraph& g,
                                         const DualSolution& dual,
                                         const TupleStats& stats,
                                         double sigma = 3.0);

enum class Lemma3Case { Degenerate, Case1, Case2, Case3 };

const char* lemma3_case_name(Lemma3Case c);

// Structure of the unordered conjugate pair, read off the representative's
// set sizes: Case1 when both |R1| and |R2| are <= |R12|, Case3 when both
// exceed |R12| (the bound is an equality there), Case2 otherwise; Degenerate
// when |R12| = 0.
Lemma3Case lemma3_case(std::size_t r1, std::size_t r12, std::size_t r2);

struct Lemma3Entry {
  TupleKey rep;  // min(T, conjugate(T))
  Lemma3Case case_label;
  double lhs;     // q(T) E[cost|X_T] + q(T_bar) E[cost|X_T_bar]
  double rhs;     // 4 (beta(T) + beta(T_bar))
  double mean_v;  // per-run mean of (event cost - 4 * event beta mass)
  double se;
  bool ok;           // mean_v <= sigma * se
  bool equality_ok;  // Case3 only: |mean_v| <= sigma * se
};

struct Lemma3Report {
  std::vector<Lemma3Entry> entries;
  bool all_ok;
};

Lemma3Report check_lemma3(const TupleStats& stats, const DualSolution& dual,
                          double sigma = 3.0);

// Compact deterministic id: "<l1>.<l2>.<R1 hex>.<R12 hex>.<R2 hex>".
std::string tuple_id(const TupleKey& t);

// CSV: kind,id,case,is_edge,lhs,bound,slack,se,ok (header included).
std::string feasibility_report_csv(const FeasibilityReport& rep);
std::string lemma3_report_csv(const Lemma3Report& rep);

}  // namespace bcc
