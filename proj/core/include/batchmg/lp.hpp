#pragma once

#include <vector>

namespace batchmg {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

enum class LpSense { kLessEqual, kEqual, kGreaterEqual };

struct LpConstraint {
  std::vector<double> coeffs;
  LpSense sense = LpSense::kLessEqual;
  double rhs = 0.0;
};

struct LpResult {
  LpStatus status = LpStatus::kIterationLimit;
  double value = 0.0;
  std::vector<double> x;
};

// Maximizes objective . x subject to the constraints and x >= 0.
// Dense two-phase primal simplex with Bland's rule; intended for the small
// problems that arise here (tens of variables and constraints).
LpResult solve_lp(const std::vector<double>& objective,
                  const std::vector<LpConstraint>& constraints,
                  int max_iters = 20000);

}  // namespace batchmg
