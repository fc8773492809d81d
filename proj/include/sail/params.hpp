#pragma once

#include <stdexcept>

namespace sail {

// The model's four physical parameters: wind variability sigma
// [rad/sqrt(time)], boat speed v, tacking cost c (time per tack) and
// target radius eta.
struct ModelParams {
  double sigma = 1.0;
  double v = 1.0;
  double c = 0.0;
  double eta = 0.0;
};

inline void validate(const ModelParams& m, bool stochastic) {
  if (stochastic ? m.sigma <= 0.0 : m.sigma < 0.0)
    throw std::invalid_argument("sigma must be positive (>= 0 for deterministic runs)");
  if (m.v <= 0.0) throw std::invalid_argument("v must be positive");
  if (m.c < 0.0) throw std::invalid_argument("c must be nonnegative");
  if (m.eta < 0.0) throw std::invalid_argument("eta must be nonnegative");
}

}  // namespace sail
