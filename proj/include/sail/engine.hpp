#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "sail/strategies.hpp"
#include "sail/wind.hpp"

namespace sail {

// State-equation formulation: indicator freeze 1_{r > eta} or the damped
// coefficients phi_n(r) (feedback strategy only).
enum class Formulation { Indicator, Damped };

// Impulse tacks either jump theta (pi/2 - theta, everything expressed on
// starboard) or flip the tack sign with theta continuous.
enum class Representation { Reduced, Full };

inline constexpr std::uint64_t kDefaultSeed = 20240915ull;

struct SimConfig {
  ModelParams model;
  StrategyKind strategy;
  WindSource wind = BrownianCircleWind{};
  double dt = 0.0;       // <= 0: 1e-3 * scale / v
  double horizon = 0.0;  // <= 0: 200 * scale / v
  std::uint64_t seed = kDefaultSeed;
  bool record_trajectory = false;
  int damping_n = 0;  // > 0 selects the damped formulation
  Representation representation = Representation::Reduced;
  std::uint64_t path_index = 0;
};

// Length scale used for the dt/horizon defaults.
double config_scale(const SimConfig& cfg, double start_r);
double effective_dt(const SimConfig& cfg, double start_r);
double effective_horizon(const SimConfig& cfg, double start_r);

enum class Event { None, TackEvent, Hit, Timeout, WindShift };

struct TrajectoryRecord {
  double t = 0.0;
  double r = 0.0;
  double theta = 0.0;  // unwrapped between tacks
  int tack = +1;
  double wind_angle = 0.0;
  Event event = Event::None;
};

struct Trajectory {
  std::vector<TrajectoryRecord> records;
};

enum class StopKind { Nu, Rho };  // entry via D^a_1 vs D^a_2

struct StopEvent {
  double t = 0.0;
  StopKind kind = StopKind::Nu;
};

enum class Terminated { Hit, Timeout };

struct RunResult {
  double tau = std::numeric_limits<double>::quiet_NaN();  // interpolated
  int tacks = 0;                                          // M_tau
  double payoff = std::numeric_limits<double>::quiet_NaN();
  Terminated terminated = Terminated::Timeout;
  std::vector<StopEvent> stopping_times;  // psi_i with entry kinds
  std::optional<int> e1_first_index;      // first i with E_i (1-based)
  bool e1 = false;                        // E_1 specifically
  double max_radius = 0.0;
  double min_radius = std::numeric_limits<double>::infinity();
  double start_r = 0.0;
  // Per-step radial increments over steps with active coefficients.
  double min_step_dr = std::numeric_limits<double>::infinity();
  double max_step_dr = -std::numeric_limits<double>::infinity();
  bool start_outside_disk = false;
  long steps = 0;
};

// One explicit Euler-Maruyama step of the polar state equation; drifts
// frozen at the pre-step state. d_beta carries the full wind-angle
// increment of the step (sigma dB for Brownian wind).
PolarState step_polar(const PolarState& s, Tack tack, double d_beta, double dt,
                      const ModelParams& m, Formulation f, int damping_n = 0);

// Simulate from (start, tack) until the target (r <= eta) or the horizon.
RunResult run(const SimConfig& cfg, PolarState start, Tack start_tack,
              Trajectory* out = nullptr);

// Holding times u_i = psi_i - psi_{i-1}, with the final segment ending at
// tau appended; [tau] when no tack occurred.
std::vector<double> extract_holding_times(const RunResult& result);

// E_1 from a recorded trajectory: sup over records of the wind-angle
// deviation from its initial value stays strictly below alpha/2.
bool detect_E1(const Trajectory& traj, double alpha);

}  // namespace sail
