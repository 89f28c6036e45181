#pragma once

#include <utility>
#include <vector>

#include "duelknap/instance.hpp"
#include "duelknap/simplex.hpp"

namespace duelknap {

enum class BenchmarkKind { condorcet, borda, shifted_borda, separated_x, separated_y };

struct StaticPolicyPair {
  std::vector<double> pi_x;
  std::vector<double> pi_y;  // empty for the separated one-sided benchmarks
};

struct BenchmarkSolution {
  StaticPolicyPair policy;
  double per_round_value = 0.0;
  double opt_total = 0.0;  // T * per_round_value
  BenchmarkKind kind = BenchmarkKind::borda;
};

// Best static pair of arm distributions with summed mean consumption paced at
// B/T per round, scored by plain Borda. Throws Infeasible.
BenchmarkSolution solve_borda_lp(const InstanceSpec& inst);

// Same feasible set, Condorcet scores. Throws NoCondorcetWinner / Infeasible.
BenchmarkSolution solve_condorcet_lp(const InstanceSpec& inst);

// Same feasible set, shifted Borda scores.
BenchmarkSolution solve_shifted_borda_lp(const InstanceSpec& inst);

// Per-side relaxation: each arm distribution paced at B/(2T) on its own
// consumption. The summed optimum upper-bounds the joint shifted optimum.
std::pair<BenchmarkSolution, BenchmarkSolution> solve_separated_lps(const InstanceSpec& inst);

}  // namespace duelknap
