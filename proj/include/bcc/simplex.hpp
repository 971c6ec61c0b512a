#pragma once

#include <vector>

namespace bcc {

struct SimplexResult {
  enum class Status { Optimal, Infeasible, IterationLimit };
  Status status;
  double objective;        // c . x at the returned point
  std::vector<double> x;   // structural variables only
};

// Maximize c.x subject to A x <= b, x >= 0 (b entries of any sign).
// Dense two-phase primal simplex with Bland's anti-cycling rule, pivot
// tolerance 1e-7, total iteration cap 10 * (rows + cols). The problems solved
// here are tiny; robustness and determinism are the point, not speed.
SimplexResult simplex_maximize(const std::vector<std::vector<double>>& A,
                               const std::vector<double>& b,
                               const std::vector<double>& c);

}  // namespace bcc
