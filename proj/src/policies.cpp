#include "duelknap/policies.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

#include "duelknap/errors.hpp"

namespace duelknap {

VigilantParams vigilant_init(int K, int d, long long T, double B, double Z_x, double Z_y) {
  if (K < 2) throw OutOfRange("need K >= 2");
  if (T < 1) throw OutOfRange("need T >= 1");
  if (Z_x < 0.0 || Z_y < 0.0) throw OutOfRange("need Z >= 0");
  VigilantParams p;
  p.K = K;
  p.d = d;
  p.T = T;
  p.B = B;
  p.Z_x = Z_x;
  p.Z_y = Z_y;
  const double base = std::pow(std::log(static_cast<double>(K)) /
                                   (static_cast<double>(T) * std::sqrt(static_cast<double>(K))),
                               2.0 / 3.0);
  p.eta_x = base / (2.0 * Z_x + 1.0);
  p.eta_y = base / (2.0 * Z_y + 1.0);
  p.gamma_x = std::sqrt(p.eta_x * K);
  p.gamma_y = std::sqrt(p.eta_y * K);
  if (p.gamma_x >= 1.0 || p.gamma_y >= 1.0)
    throw GammaOutOfRange("computed exploration rate >= 1; horizon too small for K");
  p.eta_dual = 1.0 / std::sqrt(static_cast<double>(T));
  return p;
}

VigilantState vigilant_fresh_state(const VigilantParams& p) {
  VigilantState s;
  s.cum_loss_x.assign(p.K, 0.0);
  s.cum_loss_y.assign(p.K, 0.0);
  s.q_x.assign(p.K, 1.0 / p.K);
  s.q_y.assign(p.K, 1.0 / p.K);
  s.lambda_x.assign(p.d, 0.0);
  s.lambda_y.assign(p.d, 0.0);
  return s;
}

EstimateBundle vigilant_estimates(const VigilantParams& p, const VigilantState& s,
                                  int x, int y, int o,
                                  const std::vector<double>& u_obs,
                                  const std::vector<double>& v_obs) {
  EstimateBundle est;
  est.b_hat.assign(p.K, 0.0);
  est.b_hat[x] = static_cast<double>(o) / (p.K * s.q_x[x] * s.q_y[y]);
  est.u_hat_x.assign(p.K, std::vector<double>(p.d, 1.0));
  est.u_hat_y.assign(p.K, std::vector<double>(p.d, 1.0));
  for (int r = 0; r < p.d; ++r) {
    est.u_hat_x[x][r] = 1.0 - (1.0 - u_obs[r]) / s.q_x[x];
    est.u_hat_y[y][r] = 1.0 - (1.0 - v_obs[r]) / s.q_y[y];
  }
  return est;
}

std::pair<std::vector<double>, std::vector<double>> vigilant_lagrangian(
    const VigilantParams& p, const VigilantState& s, const EstimateBundle& est) {
  const double pace = p.B / (2.0 * static_cast<double>(p.T));
  std::vector<double> lx(p.K), ly(p.K);
  for (int i = 0; i < p.K; ++i) {
    double pen_x = 0.0, pen_y = 0.0;
    for (int r = 0; r < p.d; ++r) {
      pen_x += s.lambda_x[r] * (pace - est.u_hat_x[i][r]);
      pen_y += s.lambda_y[r] * (pace - est.u_hat_y[i][r]);
    }
    lx[i] = est.b_hat[i] + p.Z_x * pen_x;
    ly[i] = est.b_hat[i] + p.Z_y * pen_y;
  }
  // Magnitude bound implied by the gamma/K sampling floor.
  const double score_cap = p.K / (p.gamma_x * p.gamma_y);
  const double bound_x =
      score_cap + p.Z_x * (pace + p.K / p.gamma_x) * p.d + 1e-9;
  const double bound_y =
      score_cap + p.Z_y * (pace + p.K / p.gamma_y) * p.d + 1e-9;
  for (int i = 0; i < p.K; ++i) {
    assert(std::abs(lx[i]) <= bound_x);
    assert(std::abs(ly[i]) <= bound_y);
    (void)bound_x;
    (void)bound_y;
  }
  return {std::move(lx), std::move(ly)};
}

namespace {

void exp_weights(const std::vector<double>& cum_loss, double eta, double gamma,
                 std::vector<double>& q) {
  const int k = static_cast<int>(cum_loss.size());
  double top = -std::numeric_limits<double>::infinity();
  for (double l : cum_loss) top = std::max(top, eta * l);
  double z = 0.0;
  for (int i = 0; i < k; ++i) {
    q[i] = std::exp(eta * cum_loss[i] - top);
    z += q[i];
  }
  for (int i = 0; i < k; ++i) q[i] = (1.0 - gamma) * q[i] / z + gamma / k;
}

}  // namespace

void vigilant_update_primal(const VigilantParams& p, VigilantState& s,
                            const std::vector<double>& loss_x,
                            const std::vector<double>& loss_y) {
  for (int i = 0; i < p.K; ++i) {
    s.cum_loss_x[i] += loss_x[i];
    s.cum_loss_y[i] += loss_y[i];
  }
  exp_weights(s.cum_loss_x, p.eta_x, p.gamma_x, s.q_x);
  exp_weights(s.cum_loss_y, p.eta_y, p.gamma_y, s.q_y);
}

void vigilant_update_dual(const VigilantParams& p, VigilantState& s,
                          const EstimateBundle& est, int x, int y,
                          const std::vector<double>& u_obs,
                          const std::vector<double>& v_obs) {
  const double pace = p.B / (2.0 * static_cast<double>(p.T));
  for (int r = 0; r < p.d; ++r) {
    const double cx = p.dual_input == DualInput::estimated ? est.u_hat_x[x][r] : u_obs[r];
    const double cy = p.dual_input == DualInput::estimated ? est.u_hat_y[y][r] : v_obs[r];
    s.lambda_x[r] = std::clamp(s.lambda_x[r] - p.eta_dual * (pace - cx), 0.0, 1.0);
    s.lambda_y[r] = std::clamp(s.lambda_y[r] - p.eta_dual * (pace - cy), 0.0, 1.0);
  }
}

std::pair<int, int> VigilantPolicy::select(Rng& rng) {
  const int x = rng.categorical(state_.q_x);
  const int y = rng.categorical(state_.q_y);
  return {x, y};
}

void VigilantPolicy::update(int x, int y, int o, const std::vector<double>& u_obs,
                            const std::vector<double>& v_obs) {
  const auto est = vigilant_estimates(params_, state_, x, y, o, u_obs, v_obs);
  auto [lx, ly] = vigilant_lagrangian(params_, state_, est);
  vigilant_update_primal(params_, state_, lx, ly);
  vigilant_update_dual(params_, state_, est, x, y, u_obs, v_obs);
}

std::unique_ptr<Policy> make_dexp3(int K, int d, long long T, double B) {
  return std::make_unique<VigilantPolicy>(vigilant_init(K, d, T, B, 0.0, 0.0));
}

DuelingThompson::DuelingThompson(int K) : k_(K) {
  if (K < 2) throw OutOfRange("need K >= 2");
  a_.assign(static_cast<size_t>(K) * K, 1.0);
  b_.assign(static_cast<size_t>(K) * K, 1.0);
}

double DuelingThompson::alpha(int i, int j) const {
  return i < j ? a_[i * k_ + j] : b_[j * k_ + i];
}

double DuelingThompson::beta(int i, int j) const {
  return i < j ? b_[i * k_ + j] : a_[j * k_ + i];
}

int DuelingThompson::sample_top(Rng& rng) {
  // Sample a full preference matrix from the posteriors and take the Borda
  // argmax (lowest index on ties).
  std::vector<double> row_sum(k_, 0.5);  // self-comparison
  for (int i = 0; i < k_; ++i) {
    for (int j = i + 1; j < k_; ++j) {
      const double th = rng.beta(a_[i * k_ + j], b_[i * k_ + j]);
      row_sum[i] += th;
      row_sum[j] += 1.0 - th;
    }
  }
  int best = 0;
  for (int i = 1; i < k_; ++i)
    if (row_sum[i] > row_sum[best]) best = i;
  return best;
}

std::pair<int, int> DuelingThompson::select(Rng& rng) {
  const int x = sample_top(rng);
  const int y = sample_top(rng);
  return {x, y};
}

void DuelingThompson::update(int x, int y, int o, const std::vector<double>&,
                             const std::vector<double>&) {
  if (x == y) return;  // P(i,i) = 1/2 is known
  if (x < y) {
    a_[x * k_ + y] += o;
    b_[x * k_ + y] += 1 - o;
  } else {
    a_[y * k_ + x] += 1 - o;
    b_[y * k_ + x] += o;
  }
}

StaticLpPolicy::StaticLpPolicy(const BenchmarkSolution& sol)
    : pi_x_(sol.policy.pi_x), pi_y_(sol.policy.pi_y) {
  if (pi_x_.empty() || pi_y_.empty())
    throw ConfigError("static policy needs both arm distributions");
}

std::pair<int, int> StaticLpPolicy::select(Rng& rng) {
  return {rng.categorical(pi_x_), rng.categorical(pi_y_)};
}

}  // namespace duelknap
