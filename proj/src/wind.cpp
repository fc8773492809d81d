#include "sail/wind.hpp"

#include <cmath>

#include <json.hpp>

namespace sail {

namespace {

double schedule_angle_at(const PiecewiseConstantWind& w, double t) {
  // Last point with start time <= t; first angle before the schedule begins.
  double angle = w.schedule.front().angle_rad;
  for (const auto& p : w.schedule) {
    if (p.t <= t)
      angle = p.angle_rad;
    else
      break;
  }
  return angle;
}

void track(WindState& s) {
  const double dev = std::abs(s.cumulative_angle - s.reference_angle);
  if (dev > s.running_sup_deviation) s.running_sup_deviation = dev;
}

}  // namespace

WindState init_wind_state(const WindSource& source, std::uint64_t path_index) {
  WindState s;
  s.path_index = path_index;
  if (const auto* c = std::get_if<ConstantWind>(&source)) {
    s.cumulative_angle = c->beta0;
  } else if (const auto* pw = std::get_if<PiecewiseConstantWind>(&source)) {
    validate_schedule(*pw);
    s.cumulative_angle = schedule_angle_at(*pw, 0.0);
  }
  s.reference_angle = s.cumulative_angle;
  return s;
}

double next_increment(const WindSource& source, WindState& state, double dt) {
  if (dt <= 0.0) throw std::invalid_argument("next_increment: dt must be > 0");
  double d_beta = 0.0;
  if (const auto* b = std::get_if<BrownianCircleWind>(&source)) {
    NormalStream stream(b->seed, state.path_index);
    d_beta = b->sigma * std::sqrt(dt) * stream.normal_at(state.step_index);
  } else if (const auto* pw = std::get_if<PiecewiseConstantWind>(&source)) {
    d_beta = schedule_angle_at(*pw, state.t + dt) -
             schedule_angle_at(*pw, state.t);
  } else if (std::holds_alternative<AdversarialWind>(source)) {
    d_beta = 0.0;  // shifts arrive through apply_shift
  }
  state.t += dt;
  state.step_index += 1;
  state.cumulative_angle += d_beta;
  track(state);
  return d_beta;
}

void reset_calm_tracker(WindState& state) {
  state.reference_angle = state.cumulative_angle;
  state.running_sup_deviation = 0.0;
}

void apply_shift(WindState& state, double d_beta) {
  state.cumulative_angle += d_beta;
  track(state);
}

void validate_schedule(const PiecewiseConstantWind& w) {
  if (w.schedule.empty())
    throw std::invalid_argument("wind schedule must not be empty");
  for (std::size_t i = 1; i < w.schedule.size(); ++i)
    if (!(w.schedule[i].t > w.schedule[i - 1].t))
      throw std::invalid_argument("wind schedule times must be strictly increasing");
}

PiecewiseConstantWind schedule_from_json_text(const std::string& text) {
  const auto doc = nlohmann::json::parse(text);
  if (!doc.is_array())
    throw std::invalid_argument("wind schedule JSON must be an array");
  PiecewiseConstantWind w;
  for (const auto& item : doc)
    w.schedule.push_back(
        {item.at("t").get<double>(), item.at("angle_rad").get<double>()});
  validate_schedule(w);
  return w;
}

}  // namespace sail
