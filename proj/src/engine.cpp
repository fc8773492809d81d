#include "sail/engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sail {

double config_scale(const SimConfig& cfg, double start_r) {
  double scale = start_r;
  if (cfg.strategy.id == StrategyId::ImpulseA)
    scale = std::max(scale, cfg.strategy.impulse.r0);
  return scale;
}

double effective_dt(const SimConfig& cfg, double start_r) {
  if (cfg.dt > 0.0) return cfg.dt;
  return 1e-3 * config_scale(cfg, start_r) / cfg.model.v;
}

double effective_horizon(const SimConfig& cfg, double start_r) {
  if (cfg.horizon > 0.0) return cfg.horizon;
  return 200.0 * config_scale(cfg, start_r) / cfg.model.v;
}

PolarState step_polar(const PolarState& s, Tack tack, double d_beta, double dt,
                      const ModelParams& m, Formulation f, int damping_n) {
  if (s.r <= 0.0) throw std::domain_error("step_polar: r must be positive");
  double phi;
  if (f == Formulation::Damped) {
    phi = phi_damping(s.r, m.eta, damping_n);
  } else {
    phi = s.r > m.eta ? 1.0 : 0.0;
  }
  if (phi == 0.0) return s;
  return {s.r + phi * mu1(s.theta, tack, m.v) * dt,
          s.theta + phi * (mu2(s.r, s.theta, tack, m.v) * dt + d_beta)};
}

namespace {

struct CalmTracker {
  double reference = 0.0;
  double sup = 0.0;
  void update(double beta) { sup = std::max(sup, std::abs(beta - reference)); }
};

}  // namespace

RunResult run(const SimConfig& cfg, PolarState start, Tack start_tack,
              Trajectory* out) {
  const bool impulse = cfg.strategy.id == StrategyId::ImpulseA;
  validate(cfg.model, std::holds_alternative<BrownianCircleWind>(cfg.wind));
  validate(cfg.strategy, cfg.model);
  if (!(start.r > cfg.model.eta))
    throw std::invalid_argument("run: start radius must exceed eta");
  if (std::holds_alternative<AdversarialWind>(cfg.wind))
    throw std::invalid_argument(
        "run: adversarial wind is driven by the scenario runner");

  const double dt = effective_dt(cfg, start.r);
  const double horizon = effective_horizon(cfg, start.r);
  if (!(dt > 0.0) || horizon < dt)
    throw std::invalid_argument("run: need dt > 0 and horizon >= dt");

  const Formulation form =
      cfg.damping_n > 0 ? Formulation::Damped : Formulation::Indicator;
  const double alpha = cfg.strategy.impulse.alpha;
  const double r0 = cfg.strategy.impulse.r0;
  const double radial_slack = cfg.model.v * dt;

  PolarState s = start;
  Tack tack = start_tack;
  if (impulse && cfg.representation == Representation::Reduced) {
    auto reduced = initial_reduction(s, tack);
    s = reduced.first;
    tack = reduced.second;
  }

  WindState wind_state = init_wind_state(cfg.wind, cfg.path_index);

  RunResult res;
  res.start_r = s.r;
  res.max_radius = res.min_radius = s.r;
  res.start_outside_disk = impulse && s.r > r0;

  std::vector<CalmTracker> trackers;
  if (impulse) trackers.push_back({wind_state.cumulative_angle, 0.0});

  Tack astar_sign = a_star(s.theta);

  const auto record = [&](double t, Event ev) {
    if (out)
      out->records.push_back({t, s.r, s.theta, sign(tack),
                              wind_state.cumulative_angle, ev});
  };

  const auto do_tack = [&](double t, Event ev) {
    res.tacks += 1;
    if (cfg.representation == Representation::Reduced)
      s.theta = tack_jump(s.theta);
    else
      tack = flip(tack);
    reset_calm_tracker(wind_state);
    trackers.push_back({wind_state.cumulative_angle, 0.0});
    record(t, ev);
  };

  // The strategy may prescribe an immediate tack at t = 0.
  if (impulse &&
      decide_impulse_A(s, tack, cfg.model, alpha, r0, radial_slack) ==
          Action::Tack) {
    auto kind = impulse_entry_kind(s, tack, cfg.model, alpha, r0, radial_slack);
    res.stopping_times.push_back(
        {0.0, kind == EntryKind::Boundary ? StopKind::Rho : StopKind::Nu});
    do_tack(0.0, Event::TackEvent);
  } else {
    record(0.0, Event::None);
  }

  double t = 0.0;
  bool hit = false;
  while (t < horizon - 0.5 * dt) {
    Event pending = Event::None;
    if (!impulse) {
      // Feedback policy; a sign change against the previous step is the
      // (zero-cost) tack event, reported for diagnostics only.
      tack = a_star(s.theta);
      if (tack != astar_sign) {
        astar_sign = tack;
        res.tacks += 1;
        pending = Event::TackEvent;
      }
    }

    const double prev_r = s.r;
    const double d_beta = next_increment(cfg.wind, wind_state, dt);
    const PolarState next =
        step_polar(s, tack, d_beta, dt, cfg.model, form, cfg.damping_n);
    t += dt;
    res.steps += 1;

    res.min_step_dr = std::min(res.min_step_dr, next.r - s.r);
    res.max_step_dr = std::max(res.max_step_dr, next.r - s.r);
    s = next;
    res.max_radius = std::max(res.max_radius, s.r);
    res.min_radius = std::min(res.min_radius, s.r);
    for (auto& tr : trackers) tr.update(wind_state.cumulative_angle);

    if (!std::isfinite(s.r) || !std::isfinite(s.theta))
      throw std::runtime_error("run: state diverged (non-finite r or theta)");

    if (s.r <= cfg.model.eta) {
      // Radius is noise-free and Lipschitz: interpolate the crossing.
      res.tau = t - dt + dt * (prev_r - cfg.model.eta) / (prev_r - s.r);
      hit = true;
      record(t, Event::Hit);
      break;
    }

    if (impulse) {
      const auto kind =
          impulse_entry_kind(s, tack, cfg.model, alpha, r0, radial_slack);
      if (kind != EntryKind::None) {
        res.stopping_times.push_back(
            {t, kind == EntryKind::Boundary ? StopKind::Rho : StopKind::Nu});
        do_tack(t, Event::TackEvent);
        continue;
      }
    }
    record(t, pending);
  }

  if (hit) {
    res.terminated = Terminated::Hit;
    res.payoff = res.tau + (impulse ? cfg.model.c * res.tacks : 0.0);
    if (impulse) {
      const double half_alpha = 0.5 * alpha;
      for (std::size_t i = 0; i < trackers.size(); ++i) {
        if (trackers[i].sup < half_alpha) {
          res.e1_first_index = static_cast<int>(i) + 1;
          break;
        }
      }
      res.e1 = !trackers.empty() && trackers[0].sup < half_alpha;
    }
  } else {
    res.terminated = Terminated::Timeout;
    if (out && !out->records.empty())
      out->records.back().event = Event::Timeout;
  }
  return res;
}

std::vector<double> extract_holding_times(const RunResult& result) {
  std::vector<double> u;
  double prev = 0.0;
  for (const auto& ev : result.stopping_times) {
    u.push_back(ev.t - prev);
    prev = ev.t;
  }
  if (result.terminated == Terminated::Hit) u.push_back(result.tau - prev);
  return u;
}

bool detect_E1(const Trajectory& traj, double alpha) {
  if (traj.records.empty()) return true;
  const double ref = traj.records.front().wind_angle;
  double sup = 0.0;
  for (const auto& rec : traj.records)
    sup = std::max(sup, std::abs(rec.wind_angle - ref));
  return sup < 0.5 * alpha;
}

}  // namespace sail
