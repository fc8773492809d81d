#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "sail/rng.hpp"

namespace sail {

// Wind-angle sources. The simulation consumes per-step angle increments
// d_beta; the Brownian source draws exact Gaussian increments
// N(0, sigma^2 dt) from a counter-based stream keyed by (seed, path).

struct BrownianCircleWind {
  double sigma = 1.0;
  std::uint64_t seed = 0;
};

struct ConstantWind {
  double beta0 = 0.0;
};

struct SchedulePoint {
  double t = 0.0;
  double angle_rad = 0.0;
};

// Piecewise-constant scripted wind; absolute angles, strictly increasing
// times. Before the first point the angle is the first point's angle;
// beyond the last the angle stays constant (zero increments).
struct PiecewiseConstantWind {
  std::vector<SchedulePoint> schedule;
};

// State-coupled wind. Carries no stream of its own: the scenarios module
// drives the shifts from the boat state; plain runs reject it.
struct AdversarialWind {};

using WindSource = std::variant<BrownianCircleWind, ConstantWind,
                                PiecewiseConstantWind, AdversarialWind>;

// Per-path mutable wind state, confined to one simulation worker.
struct WindState {
  double t = 0.0;
  double cumulative_angle = 0.0;      // unwrapped beta_t
  double reference_angle = 0.0;       // angle at the last calm-tracker reset
  double running_sup_deviation = 0.0; // sup |beta - reference| since reset
  std::uint64_t step_index = 0;
  std::uint64_t path_index = 0;
};

WindState init_wind_state(const WindSource& source, std::uint64_t path_index);

// Advance by dt, returning the angle increment d_beta and updating the
// cumulative angle and calm tracker.
double next_increment(const WindSource& source, WindState& state, double dt);

// Restart the calm tracker at the current angle (E_i resets at tack times).
void reset_calm_tracker(WindState& state);

// Record an externally applied instantaneous shift (adversarial scenarios).
void apply_shift(WindState& state, double d_beta);

void validate_schedule(const PiecewiseConstantWind& w);

// Parse a scripted wind from a JSON document:
//   [{"t": number, "angle_rad": number}, ...]
PiecewiseConstantWind schedule_from_json_text(const std::string& text);

}  // namespace sail
