#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "duelknap/benchmarks.hpp"
#include "duelknap/environment.hpp"
#include "duelknap/policies.hpp"

namespace duelknap {

struct PolicyConfig {
  std::string name;  // vigilant | dexp3 | dts | static-lp
  // Lagrangian scales; default is OPT_w/B + 1 from the separated benchmarks.
  std::optional<double> Z_x, Z_y;
  std::optional<double> eta_x, eta_y, gamma_x, gamma_y, eta_dual;
  DualInput dual_input = DualInput::observed;
  // Played by static-lp; defaults to the benchmark LP of the score kind.
  std::optional<BenchmarkSolution> static_solution;
};

struct ExperimentConfig {
  InstanceSpec instance;
  PolicyConfig policy;
  std::vector<uint64_t> seeds;
  ScoreKind score_kind = ScoreKind::borda;
  bool keep_rounds = true;  // store per-round records, not just finals
  int threads = 0;          // 0 = hardware concurrency
};

// Raw material of one trial. Per-round vectors are empty when the experiment
// ran with keep_rounds = false; finals are always filled.
struct TrialTrace {
  uint64_t seed = 0;
  long long tau = 0;
  int d = 1;
  std::vector<int> x, y;
  std::vector<uint8_t> o;
  std::vector<double> u_obs, v_obs;            // tau x d, row-major
  std::vector<double> cum_borda, cum_shifted;  // per round, length tau
  std::vector<double> cum_condorcet;           // empty when no Condorcet winner
  std::vector<double> cum_consumed;            // tau x d, row-major
  double final_borda = 0.0, final_shifted = 0.0, final_condorcet = 0.0;
  std::vector<double> final_consumed;
  bool has_condorcet = false;

  double final_reward(ScoreKind kind) const;
};

struct ExperimentResult {
  std::string policy;
  std::string instance_name;
  long long T = 0;
  int d = 1;
  double B = 0.0;
  ScoreKind score_kind = ScoreKind::borda;
  std::vector<TrialTrace> trials;  // seed-sorted
};

struct ResultsTable {
  std::vector<ExperimentResult> runs;
};

std::unique_ptr<Policy> make_policy(const PolicyConfig& cfg, const InstanceSpec& inst,
                                    ScoreKind score_kind);

TrialTrace run_trial(const InstanceSpec& inst, const PolicyConfig& policy,
                     ScoreKind score_kind, uint64_t seed, bool keep_rounds);

// Fans seeds out to a worker pool; aggregation is seed-sorted so identical
// configs give identical tables.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

struct RegretSummary {
  std::vector<double> per_seed;
  double mean = 0.0;
  double stddev = 0.0;
  double stderr_mean = 0.0;
};

// REG = OPT - REW per seed. Throws KindMismatch when the benchmark was not
// solved for the run's score kind.
RegretSummary compute_regret(const ExperimentResult& result,
                             const BenchmarkSolution& benchmark);

// Mean and +-1 std of the cumulative reward across seeds, per round; curves
// are extended flat past each trial's stopping round.
struct CurveSummary {
  std::vector<double> mean, stddev;
};
CurveSummary aggregate_cum_reward(const ExperimentResult& result);

// Rows: policy,seed,t,cum_reward,cum_consumption_1..d,tau. Requires traces
// recorded with keep_rounds. Byte-identical for identical configs.
void emit_csv(const ResultsTable& table, const std::string& path);

// One mean curve per policy with a +-1 std band.
void emit_plot(const ResultsTable& table, const std::string& path);

struct PolicyCurves {
  std::string policy;
  std::vector<std::vector<double>> per_seed;  // equal-length, flat-extended
};
void render_curves_svg(const std::vector<PolicyCurves>& curves, const std::string& path);

// Reads a CSV produced by emit_csv back into plot-ready curves.
std::vector<PolicyCurves> read_csv_curves(const std::string& path);

// Exact expected values of the round estimates under fixed sampling
// distributions, by enumerating every (x, y, outcome) with its probability.
// Noise-free consumptions assumed.
struct OracleEstimates {
  std::vector<double> b_hat_mean;
  std::vector<std::vector<double>> u_hat_x_mean, u_hat_y_mean;
};
OracleEstimates estimator_oracle(const PreferenceMatrix& P,
                                 const std::vector<double>& q_x,
                                 const std::vector<double>& q_y,
                                 const std::vector<std::vector<double>>& u_mean,
                                 const std::vector<std::vector<double>>& v_mean,
                                 double B, long long T);

}  // namespace duelknap
