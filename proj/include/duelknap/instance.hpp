#pragma once

#include <string>
#include <vector>

#include "duelknap/preference.hpp"

namespace duelknap {

// One experiment configuration unit: preference matrix, mean consumptions,
// consumption noise level, horizon and budget.
struct InstanceSpec {
  PreferenceMatrix P;
  int d = 1;
  std::vector<std::vector<double>> u_mean;  // K x d, entries in [0,1]
  std::vector<std::vector<double>> v_mean;  // K x d
  double noise_sigma = 0.0;
  long long T = 1;
  double B = 0.0;
  std::string name;

  int K() const { return P.size(); }

  // Throws ValidationFailure on broken invariants.
  void check() const;
};

}  // namespace duelknap
