#pragma once

#include <cstdint>
#include <vector>

namespace duelknap {

// xoshiro256++ seeded through splitmix64, with hand-rolled draw routines.
// All distributions are implemented here (not via <random>) so that a given
// seed produces the same trajectory on every platform and standard library.
class Rng {
 public:
  explicit Rng(uint64_t seed);

  uint64_t next_u64();

  // Uniform on [0, 1).
  double next_double();

  bool bernoulli(double p);

  double normal(double mean, double stddev);

  // Index drawn proportionally to probs (assumed nonnegative, summing to ~1).
  int categorical(const std::vector<double>& probs);

  // Gamma(shape, 1) via Marsaglia-Tsang squeeze.
  double gamma(double shape);

  double beta(double a, double b);

 private:
  uint64_t s_[4];
};

}  // namespace duelknap
