#pragma once

#include <utility>
#include <vector>

namespace duelknap {

// Maximize objective . x subject to
//   x >= 0,
//   ineq_matrix x <= ineq_rhs,
//   and for each simplex group [first, second): sum of those variables = 1.
// An empty group list means a single simplex over all variables.
struct LpProblem {
  std::vector<double> objective;
  std::vector<std::vector<double>> ineq_matrix;
  std::vector<double> ineq_rhs;
  std::vector<std::pair<int, int>> simplex_groups;
};

struct LpSolution {
  std::vector<double> x;
  double value;
};

// Dense two-phase tableau simplex with Bland's anti-cycling rule.
// Throws Infeasible or NumericalFailure.
LpSolution solve_lp(const LpProblem& problem);

}  // namespace duelknap
