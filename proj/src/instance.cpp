#include "duelknap/instance.hpp"

#include "duelknap/errors.hpp"

namespace duelknap {

void InstanceSpec::check() const {
  if (d < 1) throw ValidationFailure("instance needs d >= 1");
  if (T < 1) throw ValidationFailure("instance needs T >= 1");
  if (B < 0.0) throw ValidationFailure("instance needs B >= 0");
  if (noise_sigma < 0.0) throw ValidationFailure("instance needs noise_sigma >= 0");
  const int k = K();
  auto check_means = [&](const std::vector<std::vector<double>>& mat, const char* which) {
    if (static_cast<int>(mat.size()) != k)
      throw ValidationFailure(std::string(which) + " consumption rows != K");
    for (const auto& row : mat) {
      if (static_cast<int>(row.size()) != d)
        throw ValidationFailure(std::string(which) + " consumption cols != d");
      for (double v : row)
        if (!(v >= 0.0 && v <= 1.0))
          throw ValidationFailure(std::string(which) + " consumption outside [0,1]");
    }
  };
  check_means(u_mean, "first-arm");
  check_means(v_mean, "second-arm");
}

}  // namespace duelknap
