#include "bcc/bounds.hpp"

#include <cmath>
#include <sstream>
#include <thread>

#include "bcc/format.hpp"
#include "bcc/rng.hpp"
#include "bcc/simplex.hpp"

namespace bcc {

namespace {

// Absolute cushion added to every statistical tolerance so exact-zero checks
// (se = 0) do not fail on floating-point dust.
constexpr double kAbsEps = 1e-9;

double sample_se(double sum, double sq_sum, std::uint64_t n) {
  if (n < 2) return 0.0;
  double mean = sum / static_cast<double>(n);
  double var = (sq_sum - static_cast<double>(n) * mean * mean) /
               static_cast<double>(n - 1);
  if (var < 0) var = 0;
  return std::sqrt(var / static_cast<double>(n));
}

}  // namespace

std::vector<BadSquare> enumerate_bad_squares(const BipartiteGraph& g) {
  std::vector<BadSquare> out;
  const std::size_t nl = g.n_left(), nr = g.n_right();
  for (std::uint32_t la = 0; la < nl; ++la)
    for (std::uint32_t lb = la + 1; lb < nl; ++lb) {
      const BitRow& na = g.neighbors(la);
      const BitRow& nb = g.neighbors(lb);
      for (std::uint32_t ra = 0; ra < nr; ++ra)
        for (std::uint32_t rb = ra + 1; rb < nr; ++rb) {
          int present = int(na.test(ra)) + int(na.test(rb)) +
                        int(nb.test(ra)) + int(nb.test(rb));
          if (present != 3) continue;
          Pair missing = !na.test(ra)   ? Pair{la, ra}
                         : !na.test(rb) ? Pair{la, rb}
                         : !nb.test(ra) ? Pair{lb, ra}
                                        : Pair{lb, rb};
          out.push_back({la, lb, ra, rb, missing});
        }
    }
  return out;
}

std::size_t packing_bound(const BipartiteGraph& g) {
  BitRow used(g.n_left() * g.n_right());
  std::size_t taken = 0;
  for (const BadSquare& s : enumerate_bad_squares(g)) {
    bool free = true;
    for (const Pair& p : s.pairs())
      if (used.test(p.left * g.n_right() + p.right)) {
        free = false;
        break;
      }
    if (!free) continue;
    for (const Pair& p : s.pairs()) used.set(p.left * g.n_right() + p.right);
    ++taken;
  }
  return taken;
}

double square_lp_bound(const BipartiteGraph& g) {
  std::vector<BadSquare> squares = enumerate_bad_squares(g);
  if (squares.empty()) return 0.0;
  if (squares.size() > kMaxLpSquares)
    throw std::invalid_argument(
        "square LP refused: " + std::to_string(squares.size()) +
        " squares exceed limit " + std::to_string(kMaxLpSquares));

  // Variables: pairs covered by at least one square, in first-seen order.
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> var_of;
  std::vector<std::array<std::size_t, 4>> rows;
  rows.reserve(squares.size());
  for (const BadSquare& s : squares) {
    std::array<std::size_t, 4> idx{};
    std::size_t k = 0;
    for (const Pair& p : s.pairs()) {
      auto [it, fresh] = var_of.try_emplace({p.left, p.right}, var_of.size());
      idx[k++] = it->second;
    }
    rows.push_back(idx);
  }
  const std::size_t nvars = var_of.size();
  if (nvars > kMaxLpVariables)
    throw std::invalid_argument(
        "square LP refused: " + std::to_string(nvars) +
        " variables exceed limit " + std::to_string(kMaxLpVariables));

  // min sum x, coverage >= 1  ==  max -sum x, -coverage <= -1.
  std::vector<std::vector<double>> A(rows.size(),
                                     std::vector<double>(nvars, 0.0));
  std::vector<double> b(rows.size(), -1.0);
  std::vector<double> c(nvars, -1.0);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t v : rows[i]) A[i][v] = -1.0;

  SimplexResult res = simplex_maximize(A, b, c);
  if (res.status == SimplexResult::Status::IterationLimit)
    throw std::runtime_error("square LP: simplex iteration cap exceeded");
  if (res.status != SimplexResult::Status::Optimal)
    throw std::runtime_error("square LP: solver failed");
  return -res.objective;
}

TupleKey conjugate(const TupleKey& t) {
  return {t.l2, t.l1, t.r2, t.r12, t.r1};
}

double alpha_value(std::size_t r1, std::size_t r12, std::size_t r2) {
  if (r12 == 0) return 0.0;
  std::size_t den = std::min(r12, r1) + std::min(r12, r2);
  if (den == 0) return 1.0;
  return std::min(1.0, static_cast<double>(r12) / static_cast<double>(den));
}

double TupleStats::q_hat(const TupleKey& t) const {
  auto it = tuples.find(t);
  if (it == tuples.end() || runs == 0) return 0.0;
  return static_cast<double>(it->second.count) / static_cast<double>(runs);
}

double TupleStats::mean_cost(const TupleKey& t) const {
  auto it = tuples.find(t);
  if (it == tuples.end() || it->second.count == 0) return 0.0;
  return static_cast<double>(it->second.cost_sum) /
         static_cast<double>(it->second.count);
}

void TupleStats::merge(const TupleStats& other) {
  runs += other.runs;
  total_cost_sum += other.total_cost_sum;
  for (const auto& [key, agg] : other.tuples) {
    TupleAgg& mine = tuples[key];
    mine.count += agg.count;
    mine.cost_sum += agg.cost_sum;
    mine.cost_sq_sum += agg.cost_sq_sum;
  }
  for (std::size_t p = 0; p < lhs_sum.size(); ++p) {
    lhs_sum[p] += other.lhs_sum[p];
    lhs_sq_sum[p] += other.lhs_sq_sum[p];
  }
  beta_mass_sum += other.beta_mass_sum;
  beta_mass_sq_sum += other.beta_mass_sq_sum;
}

namespace {

TupleStats estimate_range(const BipartiteGraph& g, std::uint64_t first,
                          std::uint64_t last, std::uint64_t seed) {
  const std::size_t nl = g.n_left(), nr = g.n_right();
  TupleStats stats;
  stats.n_left = nl;
  stats.n_right = nr;
  stats.lhs_sum.assign(nl * nr, 0.0);
  stats.lhs_sq_sum.assign(nl * nr, 0.0);
  std::vector<double> y(nl * nr);

  for (std::uint64_t i = first; i < last; ++i) {
    PivotResult res = run_pivot(g, derive_seed(seed, i));
    std::vector<BitRow> err = erroneous_rows(g, res.clustering);
    std::fill(y.begin(), y.end(), 0.0);
    double w_mass = 0.0;
    for (const Phase& ph : res.trace.phases) {
      for (const TupleEvent& ev : ph.events) {
        const TupleKey& key = ev.key;
        std::size_t c1 = key.r1.count(), c12 = key.r12.count(),
                    c2 = key.r2.count();
        std::uint64_t ev_cost = ev.colored.count_and(err[key.l2]);
        TupleAgg& agg = stats.tuples[key];
        agg.count += 1;
        agg.cost_sum += ev_cost;
        agg.cost_sq_sum += ev_cost * ev_cost;

        double w = alpha_value(c1, c12, c2) *
                   static_cast<double>(std::min(c12, c2));
        w_mass += w;
        if (w > 0.0) {
          double w2 = w / static_cast<double>(c2);
          key.r2.for_each_set([&](std::size_t r) {
            y[key.l2 * nr + r] += w2;  // edge constraint of (l2, r)
            y[key.l1 * nr + r] += w2;  // non-edge constraint of (l1, r)
          });
          double w12 = w / static_cast<double>(c12);
          key.r12.for_each_set([&](std::size_t r) {
            y[key.l1 * nr + r] += w12;
            y[key.l2 * nr + r] += w12;
          });
        }
      }
    }
    // Computed from the clustering, not from the trace, so the identity
    // "total cost = sum of per-tuple colored error counts" is a real check.
    stats.total_cost_sum += cost(g, res.clustering).total;
    for (std::size_t p = 0; p < y.size(); ++p) {
      stats.lhs_sum[p] += y[p];
      stats.lhs_sq_sum[p] += y[p] * y[p];
    }
    stats.beta_mass_sum += w_mass;
    stats.beta_mass_sq_sum += w_mass * w_mass;
  }
  stats.runs = last - first;
  return stats;
}

}  // namespace

TupleStats estimate_tuple_stats(const BipartiteGraph& g, std::uint64_t runs,
                                std::uint64_t seed, unsigned workers) {
  if (workers <= 1 || runs < 2 * workers)
    return estimate_range(g, 0, runs, seed);

  std::vector<TupleStats> parts(workers);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    std::uint64_t first = runs * w / workers;
    std::uint64_t last = runs * (w + 1) / workers;
    threads.emplace_back([&, w, first, last] {
      parts[w] = estimate_range(g, first, last, seed);
    });
  }
  for (auto& t : threads) t.join();
  TupleStats stats = std::move(parts[0]);
  for (unsigned w = 1; w < workers; ++w) stats.merge(parts[w]);
  return stats;
}

DualSolution dual_solution(const TupleStats& stats) {
  DualSolution dual;
  dual.objective = 0.0;
  for (const auto& [key, agg] : stats.tuples) {
    std::size_t c1 = key.r1.count(), c12 = key.r12.count(),
                c2 = key.r2.count();
    double alpha = alpha_value(c1, c12, c2);
    double q = stats.runs == 0 ? 0.0
                               : static_cast<double>(agg.count) /
                                     static_cast<double>(stats.runs);
    double beta = alpha * q * static_cast<double>(std::min(c12, c2));
    dual.entries.emplace(key, DualEntry{alpha, beta});
    dual.objective += beta;
  }
  return dual;
}

FeasibilityReport check_dual_feasibility(const BipartiteGraph& g,
                                         const DualSolution& dual,
                                         const TupleStats& stats,
                                         double sigma) {
  (void)dual;  // the per-run accumulators encode the same beta-weighted sums
  FeasibilityReport rep;
  rep.all_ok = true;
  const std::size_t nr = g.n_right();
  for (std::uint32_t l = 0; l < g.n_left(); ++l)
    for (std::uint32_t r = 0; r < nr; ++r) {
      std::size_t p = l * nr + r;
      double lhs = stats.runs == 0
                       ? 0.0
                       : stats.lhs_sum[p] / static_cast<double>(stats.runs);
      double se = sample_se(stats.lhs_sum[p], stats.lhs_sq_sum[p], stats.runs);
      SlackEntry entry;
      entry.pair = {l, r};
      entry.is_edge = g.has_edge(l, r);
      entry.lhs = lhs;
      entry.slack = 1.0 - lhs;
      entry.se = se;
      entry.ok = entry.slack >= -(sigma * se + kAbsEps);
      rep.all_ok = rep.all_ok && entry.ok;
      rep.entries.push_back(entry);
    }
  rep.sum_beta = stats.runs == 0 ? 0.0
                                 : stats.beta_mass_sum /
                                       static_cast<double>(stats.runs);
  rep.sum_beta_se =
      sample_se(stats.beta_mass_sum, stats.beta_mass_sq_sum, stats.runs);
  return rep;
}

const char* lemma3_case_name(Lemma3Case c) {
  switch (c) {
    case Lemma3Case::Degenerate: return "degenerate";
    case Lemma3Case::Case1: return "case1";
    case Lemma3Case::Case2: return "case2";
    default: return "case3";
  }
}

Lemma3Case lemma3_case(std::size_t r1, std::size_t r12, std::size_t r2) {
  if (r12 == 0) return Lemma3Case::Degenerate;
  if (r1 <= r12 && r2 <= r12) return Lemma3Case::Case1;
  if (r12 < r1 && r12 < r2) return Lemma3Case::Case3;
  return Lemma3Case::Case2;
}

Lemma3Report check_lemma3(const TupleStats& stats, const DualSolution& dual,
                          double sigma) {
  (void)dual;  // beta is recomputed from the key's exact set sizes
  Lemma3Report rep;
  rep.all_ok = true;
  const double runs = static_cast<double>(stats.runs);

  auto side = [&](const TupleKey& key, double& cost_sum, double& cost_sq,
                  double& w, double& count) {
    std::size_t c1 = key.r1.count(), c12 = key.r12.count(),
                c2 = key.r2.count();
    w = alpha_value(c1, c12, c2) * static_cast<double>(std::min(c12, c2));
    auto it = stats.tuples.find(key);
    if (it == stats.tuples.end()) {
      cost_sum = cost_sq = count = 0.0;
      return;
    }
    cost_sum = static_cast<double>(it->second.cost_sum);
    cost_sq = static_cast<double>(it->second.cost_sq_sum);
    count = static_cast<double>(it->second.count);
  };

  for (const auto& [key, agg] : stats.tuples) {
    TupleKey bar = conjugate(key);
    const TupleKey& rep_key = std::min(key, bar);
    if (!(key == rep_key)) {
      // The conjugate orientation is (or will be) visited under its own key;
      // handle each unordered pair once, at its representative.
      if (stats.tuples.count(rep_key)) continue;
    }
    TupleKey other = conjugate(rep_key);

    double cost_a, sq_a, w_a, n_a, cost_b, sq_b, w_b, n_b;
    side(rep_key, cost_a, sq_a, w_a, n_a);
    side(other, cost_b, sq_b, w_b, n_b);

    Lemma3Entry e;
    e.rep = rep_key;
    e.case_label =
        lemma3_case(rep_key.r1.count(), rep_key.r12.count(), rep_key.r2.count());
    e.lhs = (cost_a + cost_b) / runs;
    e.rhs = 4.0 * (w_a * n_a + w_b * n_b) / runs;
    double v_sum = cost_a - 4.0 * w_a * n_a + cost_b - 4.0 * w_b * n_b;
    double v_sq = (sq_a - 8.0 * w_a * cost_a + 16.0 * w_a * w_a * n_a) +
                  (sq_b - 8.0 * w_b * cost_b + 16.0 * w_b * w_b * n_b);
    e.mean_v = v_sum / runs;
    e.se = sample_se(v_sum, v_sq, stats.runs);
    e.ok = e.mean_v <= sigma * e.se + kAbsEps;
    e.equality_ok = e.case_label != Lemma3Case::Case3 ||
                    std::fabs(e.mean_v) <= sigma * e.se + kAbsEps;
    rep.all_ok = rep.all_ok && e.ok && e.equality_ok;
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

std::string tuple_id(const TupleKey& t) {
  std::ostringstream out;
  out << t.l1 << "." << t.l2 << "." << std::hex << t.r1.low64() << "."
      << t.r12.low64() << "." << t.r2.low64();
  return out.str();
}

std::string feasibility_report_csv(const FeasibilityReport& rep) {
  std::ostringstream out;
  out << "kind,id,case,is_edge,lhs,bound,slack,se,ok\n";
  for (const SlackEntry& e : rep.entries)
    out << "pair,L" << e.pair.left << "-R" << e.pair.right << ",,"
        << (e.is_edge ? 1 : 0) << "," << format_g(e.lhs) << ",1,"
        << format_g(e.slack) << "," << format_g(e.se) << "," << (e.ok ? 1 : 0)
        << "\n";
  out << "summary,sum_beta,,," << format_g(rep.sum_beta) << ",,,"
      << format_g(rep.sum_beta_se) << "," << (rep.all_ok ? 1 : 0) << "\n";
  return out.str();
}

std::string lemma3_report_csv(const Lemma3Report& rep) {
  std::ostringstream out;
  out << "kind,id,case,is_edge,lhs,bound,slack,se,ok\n";
  for (const Lemma3Entry& e : rep.entries)
    out << "tuplepair," << tuple_id(e.rep) << ","
        << lemma3_case_name(e.case_label) << ",," << format_g(e.lhs) << ","
        << format_g(e.rhs) << "," << format_g(e.rhs - e.lhs) << ","
        << format_g(e.se) << "," << ((e.ok && e.equality_ok) ? 1 : 0) << "\n";
  return out.str();
}

}  // namespace bcc
