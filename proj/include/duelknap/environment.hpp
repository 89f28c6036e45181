#pragma once

#include <cstdint>
#include <vector>

#include "duelknap/instance.hpp"
#include "duelknap/rng.hpp"

namespace duelknap {

struct DuelFeedback {
  int o = 0;                   // 1 iff x preferred over y
  std::vector<double> u_obs;   // realized consumption of the first arm
  std::vector<double> v_obs;   // realized consumption of the second arm
};

// Stochastic duel simulator with budget accounting. Owns the trial's RNG
// stream; within a round the preference bit is drawn before the consumption
// noise, in a fixed order, so identical seeds replay identical trajectories.
class Environment {
 public:
  Environment(InstanceSpec inst, uint64_t seed);

  // Plays one duel. The overshooting round still counts: its feedback is
  // returned, its consumption accumulates, and tau is that round.
  // Throws AlreadyStopped once the trial has ended.
  DuelFeedback step(int x, int y);

  bool stopped() const { return stopped_; }
  long long tau() const { return tau_; }       // valid once stopped
  long long round() const { return t_; }       // next round to play
  const std::vector<double>& consumed() const { return consumed_; }
  const InstanceSpec& instance() const { return inst_; }
  Rng& rng() { return rng_; }

 private:
  InstanceSpec inst_;
  Rng rng_;
  long long t_ = 1;
  std::vector<double> consumed_;
  bool stopped_ = false;
  long long tau_ = 0;
};

// score(x) + score(y) under the requested score vector.
// Throws NoCondorcetWinner for the Condorcet kind when no winner exists.
double true_reward(const InstanceSpec& inst, int x, int y, ScoreKind kind);

}  // namespace duelknap
