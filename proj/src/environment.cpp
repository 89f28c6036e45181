#include "duelknap/environment.hpp"

#include <algorithm>

#include "duelknap/errors.hpp"

namespace duelknap {

Environment::Environment(InstanceSpec inst, uint64_t seed)
    : inst_(std::move(inst)), rng_(seed), consumed_(inst_.d, 0.0) {
  inst_.check();
}

DuelFeedback Environment::step(int x, int y) {
  if (stopped_) throw AlreadyStopped("environment already stopped");
  const int k = inst_.K();
  if (x < 0 || x >= k || y < 0 || y >= k) throw OutOfRange("arm index outside [K]");

  DuelFeedback fb;
  fb.o = rng_.bernoulli(inst_.P(x, y)) ? 1 : 0;
  fb.u_obs.resize(inst_.d);
  fb.v_obs.resize(inst_.d);
  for (int r = 0; r < inst_.d; ++r) {
    double u = inst_.u_mean[x][r];
    if (inst_.noise_sigma > 0.0) u += rng_.normal(0.0, inst_.noise_sigma);
    fb.u_obs[r] = std::clamp(u, 0.0, 1.0);
  }
  for (int r = 0; r < inst_.d; ++r) {
    double v = inst_.v_mean[y][r];
    if (inst_.noise_sigma > 0.0) v += rng_.normal(0.0, inst_.noise_sigma);
    fb.v_obs[r] = std::clamp(v, 0.0, 1.0);
  }

  bool exhausted = false;
  for (int r = 0; r < inst_.d; ++r) {
    consumed_[r] += fb.u_obs[r] + fb.v_obs[r];
    if (consumed_[r] > inst_.B) exhausted = true;
  }
  if (exhausted) {
    stopped_ = true;
    tau_ = t_;
  } else if (t_ >= inst_.T) {
    stopped_ = true;
    tau_ = inst_.T;
  }
  ++t_;
  return fb;
}

double true_reward(const InstanceSpec& inst, int x, int y, ScoreKind kind) {
  ScoreVector s{{}, kind};
  switch (kind) {
    case ScoreKind::borda:
      s = borda_scores(inst.P);
      break;
    case ScoreKind::shifted_borda:
      s = shifted_borda_scores(inst.P);
      break;
    case ScoreKind::condorcet:
      s = condorcet_scores(inst.P);
      break;
  }
  return s.values[x] + s.values[y];
}

}  // namespace duelknap
