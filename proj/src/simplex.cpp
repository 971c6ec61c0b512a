#include "bcc/simplex.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace bcc {

namespace {

constexpr double kEps = 1e-7;

struct Tableau {
  std::size_t m, ncols;          // rows, columns excluding RHS
  std::size_t n_struct;
  std::size_t art_begin;         // first artificial column
  std::vector<std::vector<double>> t;  // m rows of ncols+1 (last = RHS)
  std::vector<std::size_t> basis;      // column basic in each row
  std::vector<double> r;               // reduced-cost row (maximization)
  std::size_t iterations = 0;
  std::size_t iteration_cap = 0;

  void pivot(std::size_t pr, std::size_t pc) {
    double piv = t[pr][pc];
    for (double& v : t[pr]) v /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == pr || std::fabs(t[i][pc]) < 1e-15) continue;
      double f = t[i][pc];
      for (std::size_t j = 0; j <= ncols; ++j) t[i][j] -= f * t[pr][j];
    }
    double f = r[pc];
    if (std::fabs(f) > 1e-15)
      for (std::size_t j = 0; j < ncols; ++j) r[j] -= f * t[pr][j];
    basis[pr] = pc;
    ++iterations;
  }

  // Reduced costs for maximizing the given full-length cost vector.
  void price(const std::vector<double>& cost) {
    r = cost;
    for (std::size_t i = 0; i < m; ++i) {
      double cb = cost[basis[i]];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j < ncols; ++j) r[j] -= cb * t[i][j];
    }
  }

  // Returns Optimal, Unbounded-mapped-to-caller, or IterationLimit.
  // Artificial columns never enter.
  enum class LoopEnd { Optimal, Unbounded, Limit };
  LoopEnd iterate() {
    for (;;) {
      if (iterations >= iteration_cap) return LoopEnd::Limit;
      // Bland: smallest improving column.
      std::size_t pc = ncols;
      for (std::size_t j = 0; j < art_begin; ++j)
        if (r[j] > kEps) {
          pc = j;
          break;
        }
      if (pc == ncols) return LoopEnd::Optimal;
      // Min ratio; ties to the smallest basis label.
      std::size_t pr = m;
      double best = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        if (t[i][pc] <= kEps) continue;
        double ratio = t[i][ncols] / t[i][pc];
        if (pr == m || ratio < best - kEps ||
            (ratio < best + kEps && basis[i] < basis[pr])) {
          pr = i;
          best = ratio;
        }
      }
      if (pr == m) return LoopEnd::Unbounded;
      pivot(pr, pc);
    }
  }
};

}  // namespace

SimplexResult simplex_maximize(const std::vector<std::vector<double>>& A,
                               const std::vector<double>& b,
                               const std::vector<double>& c) {
  const std::size_t m = A.size();
  const std::size_t n = c.size();
  for (const auto& row : A)
    if (row.size() != n)
      throw std::invalid_argument("constraint row width mismatch");
  if (b.size() != m) throw std::invalid_argument("rhs length mismatch");

  std::size_t n_art = 0;
  for (double bi : b)
    if (bi < 0) ++n_art;

  Tableau tb;
  tb.m = m;
  tb.n_struct = n;
  tb.art_begin = n + m;
  tb.ncols = n + m + n_art;
  tb.iteration_cap = 10 * (m + tb.ncols);
  tb.t.assign(m, std::vector<double>(tb.ncols + 1, 0.0));
  tb.basis.assign(m, 0);

  std::size_t art = 0;
  for (std::size_t i = 0; i < m; ++i) {
    double sign = b[i] < 0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j) tb.t[i][j] = sign * A[i][j];
    tb.t[i][n + i] = sign;  // slack
    tb.t[i][tb.ncols] = sign * b[i];
    if (b[i] < 0) {
      std::size_t col = tb.art_begin + art++;
      tb.t[i][col] = 1.0;
      tb.basis[i] = col;
    } else {
      tb.basis[i] = n + i;
    }
  }

  auto extract = [&](SimplexResult::Status st) {
    SimplexResult res;
    res.status = st;
    res.x.assign(n, 0.0);
    for (std::size_t i = 0; i < m; ++i)
      if (tb.basis[i] < n) res.x[tb.basis[i]] = tb.t[i][tb.ncols];
    res.objective = 0.0;
    for (std::size_t j = 0; j < n; ++j) res.objective += c[j] * res.x[j];
    return res;
  };

  if (n_art > 0) {
    std::vector<double> phase1(tb.ncols, 0.0);
    for (std::size_t j = tb.art_begin; j < tb.ncols; ++j) phase1[j] = -1.0;
    tb.price(phase1);
    Tableau::LoopEnd end = tb.iterate();
    if (end == Tableau::LoopEnd::Limit)
      return extract(SimplexResult::Status::IterationLimit);
    double infeas = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      if (tb.basis[i] >= tb.art_begin) infeas += tb.t[i][tb.ncols];
    if (infeas > kEps) return extract(SimplexResult::Status::Infeasible);
    // Drive leftover zero-value artificials out of the basis when possible.
    for (std::size_t i = 0; i < m; ++i) {
      if (tb.basis[i] < tb.art_begin) continue;
      for (std::size_t j = 0; j < tb.art_begin; ++j)
        if (std::fabs(tb.t[i][j]) > kEps) {
          tb.pivot(i, j);
          break;
        }
    }
  }

  std::vector<double> phase2(tb.ncols, 0.0);
  for (std::size_t j = 0; j < n; ++j) phase2[j] = c[j];
  tb.price(phase2);
  Tableau::LoopEnd end = tb.iterate();
  if (end == Tableau::LoopEnd::Limit)
    return extract(SimplexResult::Status::IterationLimit);
  if (end == Tableau::LoopEnd::Unbounded)
    throw std::runtime_error("simplex: objective unbounded");
  return extract(SimplexResult::Status::Optimal);
}

}  // namespace bcc
