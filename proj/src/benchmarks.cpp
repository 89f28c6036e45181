#include "duelknap/benchmarks.hpp"

#include <cmath>

#include "duelknap/errors.hpp"

namespace duelknap {

namespace {

// Joint LP over (pi_x, pi_y): maximize sum of scores under the pooled
// per-round budget rate B/T on each resource.
BenchmarkSolution solve_joint(const InstanceSpec& inst, const ScoreVector& scores,
                              BenchmarkKind kind) {
  const int k = inst.K();
  LpProblem lp;
  lp.objective.resize(2 * k);
  for (int i = 0; i < k; ++i) {
    lp.objective[i] = scores.values[i];
    lp.objective[k + i] = scores.values[i];
  }
  const double rate = inst.B / static_cast<double>(inst.T);
  lp.ineq_matrix.assign(inst.d, std::vector<double>(2 * k, 0.0));
  lp.ineq_rhs.assign(inst.d, rate);
  for (int r = 0; r < inst.d; ++r) {
    for (int i = 0; i < k; ++i) {
      lp.ineq_matrix[r][i] = inst.u_mean[i][r];
      lp.ineq_matrix[r][k + i] = inst.v_mean[i][r];
    }
  }
  lp.simplex_groups = {{0, k}, {k, 2 * k}};
  LpSolution sol = solve_lp(lp);

  BenchmarkSolution out;
  out.kind = kind;
  out.policy.pi_x.assign(sol.x.begin(), sol.x.begin() + k);
  out.policy.pi_y.assign(sol.x.begin() + k, sol.x.end());
  out.per_round_value = sol.value;
  out.opt_total = static_cast<double>(inst.T) * sol.value;
  return out;
}

BenchmarkSolution solve_one_side(const InstanceSpec& inst, const ScoreVector& scores,
                                 const std::vector<std::vector<double>>& means,
                                 BenchmarkKind kind) {
  const int k = inst.K();
  LpProblem lp;
  lp.objective = scores.values;
  const double rate = inst.B / (2.0 * static_cast<double>(inst.T));
  lp.ineq_matrix.assign(inst.d, std::vector<double>(k, 0.0));
  lp.ineq_rhs.assign(inst.d, rate);
  for (int r = 0; r < inst.d; ++r)
    for (int i = 0; i < k; ++i) lp.ineq_matrix[r][i] = means[i][r];
  LpSolution sol = solve_lp(lp);

  BenchmarkSolution out;
  out.kind = kind;
  out.policy.pi_x = sol.x;
  out.per_round_value = sol.value;
  out.opt_total = static_cast<double>(inst.T) * sol.value;
  return out;
}

}  // namespace

BenchmarkSolution solve_borda_lp(const InstanceSpec& inst) {
  return solve_joint(inst, borda_scores(inst.P), BenchmarkKind::borda);
}

BenchmarkSolution solve_condorcet_lp(const InstanceSpec& inst) {
  return solve_joint(inst, condorcet_scores(inst.P), BenchmarkKind::condorcet);
}

BenchmarkSolution solve_shifted_borda_lp(const InstanceSpec& inst) {
  return solve_joint(inst, shifted_borda_scores(inst.P), BenchmarkKind::shifted_borda);
}

std::pair<BenchmarkSolution, BenchmarkSolution> solve_separated_lps(const InstanceSpec& inst) {
  const auto scores = shifted_borda_scores(inst.P);
  return {solve_one_side(inst, scores, inst.u_mean, BenchmarkKind::separated_x),
          solve_one_side(inst, scores, inst.v_mean, BenchmarkKind::separated_y)};
}

}  // namespace duelknap
