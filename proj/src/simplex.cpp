#include "duelknap/simplex.hpp"

#include <cmath>
#include <limits>

#include "duelknap/errors.hpp"

namespace duelknap {

namespace {

constexpr double kPivotTol = 1e-10;
constexpr double kFeasTol = 1e-8;
constexpr int kMaxIters = 20000;

struct Tableau {
  int rows = 0;
  int cols = 0;  // excluding rhs column
  std::vector<std::vector<double>> a;  // rows x (cols + 1), last entry is rhs
  std::vector<int> basis;              // basic variable per row

  // Maximize cost over allowed columns. Bland's rule throughout.
  void optimize(const std::vector<double>& cost, int allowed_cols) {
    for (int iter = 0; iter < kMaxIters; ++iter) {
      // Reduced costs relative to the current basis.
      int entering = -1;
      for (int j = 0; j < allowed_cols; ++j) {
        double cbar = cost[j];
        for (int i = 0; i < rows; ++i) cbar -= cost[basis[i]] * a[i][j];
        if (cbar > kPivotTol) {
          entering = j;
          break;  // smallest index first
        }
      }
      if (entering < 0) return;  // optimal

      int leaving = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (int i = 0; i < rows; ++i) {
        if (a[i][entering] > kPivotTol) {
          const double ratio = a[i][cols] / a[i][entering];
          if (ratio < best_ratio - kPivotTol ||
              (ratio < best_ratio + kPivotTol &&
               (leaving < 0 || basis[i] < basis[leaving]))) {
            best_ratio = ratio;
            leaving = i;
          }
        }
      }
      if (leaving < 0)
        throw NumericalFailure("simplex: unbounded direction encountered");
      pivot(leaving, entering);
    }
    throw NumericalFailure("simplex: iteration limit reached");
  }

  void pivot(int r, int c) {
    const double piv = a[r][c];
    for (int j = 0; j <= cols; ++j) a[r][j] /= piv;
    for (int i = 0; i < rows; ++i) {
      if (i == r) continue;
      const double f = a[i][c];
      if (f == 0.0) continue;
      for (int j = 0; j <= cols; ++j) a[i][j] -= f * a[r][j];
    }
    basis[r] = c;
  }
};

}  // namespace

LpSolution solve_lp(const LpProblem& problem) {
  const int n = static_cast<int>(problem.objective.size());
  const int m = static_cast<int>(problem.ineq_matrix.size());
  if (n < 1) throw NumericalFailure("LP has no variables");
  if (static_cast<int>(problem.ineq_rhs.size()) != m)
    throw NumericalFailure("LP rhs size mismatch");

  std::vector<std::pair<int, int>> groups = problem.simplex_groups;
  if (groups.empty()) groups.emplace_back(0, n);
  const int g = static_cast<int>(groups.size());

  // Column layout: [0,n) original, [n, n+m) slack/surplus, then artificials.
  // An inequality row with negative rhs is flipped to a >=-row and gets an
  // artificial; equality (simplex) rows always get one.
  int n_art = g;
  for (int i = 0; i < m; ++i)
    if (problem.ineq_rhs[i] < 0.0) ++n_art;

  Tableau t;
  t.rows = m + g;
  t.cols = n + m + n_art;
  t.a.assign(t.rows, std::vector<double>(t.cols + 1, 0.0));
  t.basis.assign(t.rows, -1);

  int art = n + m;
  for (int i = 0; i < m; ++i) {
    if (static_cast<int>(problem.ineq_matrix[i].size()) != n)
      throw NumericalFailure("LP constraint row size mismatch");
    const bool flip = problem.ineq_rhs[i] < 0.0;
    const double sgn = flip ? -1.0 : 1.0;
    for (int j = 0; j < n; ++j) t.a[i][j] = sgn * problem.ineq_matrix[i][j];
    t.a[i][t.cols] = sgn * problem.ineq_rhs[i];
    t.a[i][n + i] = flip ? -1.0 : 1.0;  // slack or surplus
    if (flip) {
      t.a[i][art] = 1.0;
      t.basis[i] = art++;
    } else {
      t.basis[i] = n + i;
    }
  }
  for (int gi = 0; gi < g; ++gi) {
    const int row = m + gi;
    const auto [first, last] = groups[gi];
    if (first < 0 || last > n || first >= last)
      throw NumericalFailure("LP simplex group out of range");
    for (int j = first; j < last; ++j) t.a[row][j] = 1.0;
    t.a[row][t.cols] = 1.0;
    t.a[row][art] = 1.0;
    t.basis[row] = art++;
  }

  // Phase 1: drive the artificials to zero.
  std::vector<double> phase1(t.cols, 0.0);
  for (int j = n + m; j < t.cols; ++j) phase1[j] = -1.0;
  t.optimize(phase1, t.cols);
  double art_sum = 0.0;
  for (int i = 0; i < t.rows; ++i)
    if (t.basis[i] >= n + m) art_sum += t.a[i][t.cols];
  if (art_sum > kFeasTol)
    throw Infeasible("no point of the simplex satisfies the constraints");

  // Pivot any leftover zero-valued artificial out of the basis; rows with no
  // eligible column are redundant and are blanked.
  for (int i = 0; i < t.rows; ++i) {
    if (t.basis[i] < n + m) continue;
    int col = -1;
    for (int j = 0; j < n + m; ++j) {
      if (std::abs(t.a[i][j]) > kPivotTol) {
        col = j;
        break;
      }
    }
    if (col >= 0) {
      t.pivot(i, col);
    } else {
      for (int j = 0; j <= t.cols; ++j) t.a[i][j] = 0.0;
      t.a[i][t.basis[i]] = 1.0;
    }
  }

  // Phase 2: artificial columns may not re-enter.
  std::vector<double> phase2(t.cols, 0.0);
  for (int j = 0; j < n; ++j) phase2[j] = problem.objective[j];
  t.optimize(phase2, n + m);

  LpSolution sol;
  sol.x.assign(n, 0.0);
  for (int i = 0; i < t.rows; ++i)
    if (t.basis[i] < n) sol.x[t.basis[i]] = t.a[i][t.cols];
  // Clamp simplex round-off on output.
  for (auto& v : sol.x)
    if (v < 0.0) v = 0.0;
  sol.value = 0.0;
  for (int j = 0; j < n; ++j) sol.value += problem.objective[j] * sol.x[j];
  return sol;
}

}  // namespace duelknap
