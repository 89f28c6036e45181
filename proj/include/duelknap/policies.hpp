#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "duelknap/benchmarks.hpp"
#include "duelknap/rng.hpp"

namespace duelknap {

// Common select/update surface. One policy instance drives one trial.
class Policy {
 public:
  virtual ~Policy() = default;
  virtual std::pair<int, int> select(Rng& rng) = 0;
  virtual void update(int x, int y, int o, const std::vector<double>& u_obs,
                      const std::vector<double>& v_obs) = 0;
};

// Which consumption signal feeds the dual gradient: the importance-weighted
// estimate at the played arm, or the raw observed consumption. Both appear in
// the algorithm's two published listings; observed is the default because the
// estimate evaluated at the played arm is biased low and pins the duals at 0
// (see tests).
enum class DualInput { estimated, observed };

struct VigilantParams {
  int K = 0;
  int d = 1;
  long long T = 1;
  double B = 0.0;
  double Z_x = 0.0, Z_y = 0.0;
  double eta_x = 0.0, eta_y = 0.0;    // primal learning rates
  double gamma_x = 0.0, gamma_y = 0.0;  // uniform-mixing floors
  double eta_dual = 0.0;              // dual step size
  DualInput dual_input = DualInput::observed;
};

struct VigilantState {
  std::vector<double> cum_loss_x, cum_loss_y;  // running sums of estimated losses
  std::vector<double> q_x, q_y;                // sampling distributions
  std::vector<double> lambda_x, lambda_y;      // dual variables in [0,1]^d
};

struct EstimateBundle {
  std::vector<double> b_hat;                      // one nonzero entry at most
  std::vector<std::vector<double>> u_hat_x;       // K x d
  std::vector<std::vector<double>> u_hat_y;       // K x d
};

// Learning/exploration rates from the closed-form schedule
//   eta_w = (log K / (T sqrt(K)))^(2/3) / (2 Z_w + 1),  gamma_w = sqrt(eta_w K),
// dual step 1/sqrt(T). Throws GammaOutOfRange when the computed mixing rate
// reaches 1 (horizon too small for K).
VigilantParams vigilant_init(int K, int d, long long T, double B, double Z_x, double Z_y);

VigilantState vigilant_fresh_state(const VigilantParams& p);

// Importance-weighted score and consumption estimates for the played round.
EstimateBundle vigilant_estimates(const VigilantParams& p, const VigilantState& s,
                                  int x, int y, int o,
                                  const std::vector<double>& u_obs,
                                  const std::vector<double>& v_obs);

// Per-arm Lagrangian losses: estimate plus Z-scaled dual penalty against the
// per-side budget pace B/(2T).
std::pair<std::vector<double>, std::vector<double>> vigilant_lagrangian(
    const VigilantParams& p, const VigilantState& s, const EstimateBundle& est);

// Exponential weights over the cumulative losses (max-subtracted logits) with
// a gamma/K uniform floor.
void vigilant_update_primal(const VigilantParams& p, VigilantState& s,
                            const std::vector<double>& loss_x,
                            const std::vector<double>& loss_y);

// Projected online gradient step on the budget-pacing objective, separately
// per side, clipped to [0,1]^d.
void vigilant_update_dual(const VigilantParams& p, VigilantState& s,
                          const EstimateBundle& est, int x, int y,
                          const std::vector<double>& u_obs,
                          const std::vector<double>& v_obs);

class VigilantPolicy : public Policy {
 public:
  explicit VigilantPolicy(VigilantParams params)
      : params_(std::move(params)), state_(vigilant_fresh_state(params_)) {}

  std::pair<int, int> select(Rng& rng) override;
  void update(int x, int y, int o, const std::vector<double>& u_obs,
              const std::vector<double>& v_obs) override;

  const VigilantParams& params() const { return params_; }
  const VigilantState& state() const { return state_; }

 private:
  VigilantParams params_;
  VigilantState state_;
};

// The unconstrained baseline is the same machinery with Z_x = Z_y = 0.
std::unique_ptr<Policy> make_dexp3(int K, int d, long long T, double B);

// Thompson sampling over per-pair Beta posteriors; each side plays the Borda
// argmax of an independently resampled preference matrix.
class DuelingThompson : public Policy {
 public:
  explicit DuelingThompson(int K);

  std::pair<int, int> select(Rng& rng) override;
  void update(int x, int y, int o, const std::vector<double>& u_obs,
              const std::vector<double>& v_obs) override;

  // Posterior parameters for the ordered pair (i, j), i != j.
  double alpha(int i, int j) const;
  double beta(int i, int j) const;

 private:
  int sample_top(Rng& rng);
  int k_;
  std::vector<double> a_, b_;  // upper-triangle storage, pair (i<j)
};

// Plays a fixed benchmark solution every round.
class StaticLpPolicy : public Policy {
 public:
  explicit StaticLpPolicy(const BenchmarkSolution& sol);

  std::pair<int, int> select(Rng& rng) override;
  void update(int, int, int, const std::vector<double>&,
              const std::vector<double>&) override {}

 private:
  std::vector<double> pi_x_, pi_y_;
};

}  // namespace duelknap
