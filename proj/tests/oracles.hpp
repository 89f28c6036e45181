#pragma once

// Independent oracles used by the unit and acceptance tests. Everything here
// is computed from first principles (closed forms or brute enumeration), not
// by calling the code under test.

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "duelknap/instance.hpp"
#include "duelknap/preference.hpp"
#include "duelknap/rng.hpp"

namespace oracles {

inline std::vector<std::vector<double>> random_matrix(duelknap::Rng& rng, int k) {
  std::vector<std::vector<double>> p(k, std::vector<double>(k, 0.5));
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      p[i][j] = 0.01 + 0.98 * rng.next_double();
      p[j][i] = 1.0 - p[i][j];
    }
  }
  return p;
}

inline duelknap::InstanceSpec random_instance(duelknap::Rng& rng, int max_k, int max_d,
                                              bool symmetric = false) {
  const int k = 2 + static_cast<int>(rng.next_double() * (max_k - 1));
  const int d = 1 + static_cast<int>(rng.next_double() * max_d);
  duelknap::InstanceSpec inst{
      duelknap::PreferenceMatrix::validate(random_matrix(rng, std::min(k, max_k)))};
  inst.d = std::min(d, max_d);
  inst.u_mean.assign(inst.K(), std::vector<double>(inst.d));
  inst.v_mean.assign(inst.K(), std::vector<double>(inst.d));
  for (int i = 0; i < inst.K(); ++i) {
    for (int r = 0; r < inst.d; ++r) {
      inst.u_mean[i][r] = rng.next_double();
      inst.v_mean[i][r] = symmetric ? inst.u_mean[i][r] : rng.next_double();
    }
  }
  inst.T = 100 + static_cast<int>(rng.next_double() * 1900);
  // Budget rate high enough that both the joint benchmark (cheapest pair at
  // rate B/T) and the per-side benchmarks (cheapest arm at rate B/2T) are
  // feasible.
  double min_pair = 2.0;
  for (int i = 0; i < inst.K(); ++i) {
    for (int j = 0; j < inst.K(); ++j) {
      double worst = 0.0;
      for (int r = 0; r < inst.d; ++r)
        worst = std::max(worst, inst.u_mean[i][r] + inst.v_mean[j][r]);
      min_pair = std::min(min_pair, worst);
    }
  }
  double min_arm_x = 2.0, min_arm_y = 2.0;
  for (int i = 0; i < inst.K(); ++i) {
    double wx = 0.0, wy = 0.0;
    for (int r = 0; r < inst.d; ++r) {
      wx = std::max(wx, inst.u_mean[i][r]);
      wy = std::max(wy, inst.v_mean[i][r]);
    }
    min_arm_x = std::min(min_arm_x, wx);
    min_arm_y = std::min(min_arm_y, wy);
  }
  const double floor =
      std::max(min_pair, 2.0 * std::max(min_arm_x, min_arm_y)) + 1e-9;
  const double rate = floor + (2.0 - std::min(floor, 2.0)) * rng.next_double();
  inst.B = rate * static_cast<double>(inst.T);
  inst.noise_sigma = 0.0;
  inst.name = "random";
  inst.check();
  return inst;
}

// Single-simplex, single-constraint fractional knapsack:
//   max sum pi*obj  s.t. pi in simplex, sum pi*cost <= rate.
// The optimum has support on at most two items; enumerate singletons and all
// boundary mixes of item pairs.
inline std::optional<double> knapsack_d1(const std::vector<double>& obj,
                                         const std::vector<double>& cost, double rate) {
  const int n = static_cast<int>(obj.size());
  std::optional<double> best;
  for (int i = 0; i < n; ++i)
    if (cost[i] <= rate + 1e-15) best = std::max(best.value_or(-1e300), obj[i]);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (cost[i] >= cost[j]) continue;
      if (cost[i] > rate || cost[j] <= rate) continue;
      const double w = (rate - cost[i]) / (cost[j] - cost[i]);
      best = std::max(best.value_or(-1e300), (1.0 - w) * obj[i] + w * obj[j]);
    }
  }
  return best;
}

inline std::vector<double> borda_by_hand(const std::vector<std::vector<double>>& p) {
  const int k = static_cast<int>(p.size());
  std::vector<double> b(k, 0.0);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j)
      if (j != i) b[i] += p[i][j];
    b[i] /= (k - 1);
  }
  return b;
}

inline std::vector<double> shifted_borda_by_hand(const std::vector<std::vector<double>>& p) {
  const int k = static_cast<int>(p.size());
  std::vector<double> b(k, 0.0);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) b[i] += p[i][j];
    b[i] /= k;
  }
  return b;
}

// Joint two-simplex d=1 benchmark value by splitting the pooled rate between
// the sides and solving each side's knapsack in closed form. The value is
// concave in the split, so a fine grid is accurate to O(grid step * slope).
inline std::optional<double> joint_d1_grid(const std::vector<double>& score,
                                           const std::vector<double>& u,
                                           const std::vector<double>& v, double rate,
                                           int grid = 200001) {
  std::optional<double> best;
  for (int g = 0; g < grid; ++g) {
    const double rx = rate * g / (grid - 1);
    const auto fx = knapsack_d1(score, u, rx);
    const auto fy = knapsack_d1(score, v, rate - rx);
    if (fx && fy) best = std::max(best.value_or(-1e300), *fx + *fy);
  }
  return best;
}

}  // namespace oracles
