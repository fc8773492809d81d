#include "sail/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sail {

namespace {

struct Tracker {
  ScenarioReport* rep;
  double eta;

  void observe(const PolarState& s) {
    rep->min_radius = std::min(rep->min_radius, s.r);
    rep->max_radius = std::max(rep->max_radius, s.r);
  }
};

// The scenarios run under scripted wind with no diffusion, and the drift
// is smooth along each leg (events fall between steps), so a Heun step
// holds the radius error at O(dt^2); first-order drift error would eat
// the v dt confinement slack.
PolarState heun_step(const PolarState& s, Tack tack, double dt,
                     const ModelParams& m) {
  if (s.r <= 0.0) throw std::domain_error("heun_step: r must be positive");
  if (s.r <= m.eta) return s;
  const double k1r = mu1(s.theta, tack, m.v);
  const double k1t = mu2(s.r, s.theta, tack, m.v);
  const PolarState mid{s.r + k1r * dt, s.theta + k1t * dt};
  if (mid.r <= m.eta) return {s.r + k1r * dt, s.theta + k1t * dt};
  const double k2r = mu1(mid.theta, tack, m.v);
  const double k2t = mu2(mid.r, mid.theta, tack, m.v);
  return {s.r + 0.5 * dt * (k1r + k2r), s.theta + 0.5 * dt * (k1t + k2t)};
}

}  // namespace

ScenarioReport run_appendix_scenario(const ModelParams& m,
                                     const AdversarialParams& adv, int cycles,
                                     double dt) {
  validate(m, false);
  if (!(adv.r0 > m.eta) || !(adv.r1 > m.eta && adv.r1 < adv.r0))
    throw std::invalid_argument("appendix scenario: need eta < r1 < r0");
  if (adv.beta < 0.0 || adv.beta >= adv.alpha)
    throw std::invalid_argument("appendix scenario: need 0 <= beta < alpha");
  if (!(adv.alpha0 > 0.0 && adv.alpha0 < kQuarterPi))
    throw std::invalid_argument("appendix scenario: alpha0 must lie in ]0, pi/4[");
  if (dt <= 0.0) dt = 1e-3 * adv.r0 / m.v;
  const bool shifts = adv.beta > 0.0;

  ScenarioReport rep;
  rep.min_radius = rep.max_radius = adv.r0;
  Tracker track{&rep, m.eta};

  PolarState s{adv.r0, adv.alpha0};
  Tack tack = Tack::Starboard;
  double t = 0.0;
  double beta_cum = 0.0;  // wind angle in the schedule's frame
  bool alpha1_known = false;
  double gamma = 0.0;
  enum class Phase { Beat, Descend } phase = Phase::Beat;
  int mirror = +1;  // +1 starboard beat, -1 the mirrored port beat
  const double radial_slack = m.v * dt;

  auto& traj = rep.trajectory.records;
  const auto record = [&](Event ev) {
    traj.push_back({t, s.r, s.theta, sign(tack), beta_cum, ev});
  };
  const auto shift_wind = [&](double d_beta) {
    beta_cum += d_beta;
    s.theta += d_beta;
    rep.shifts += 1;
    record(Event::WindShift);
  };
  record(Event::None);

  // Enough for the requested cycles at any sane geometry; exceeding it
  // means a trigger can never fire.
  const double budget =
      200.0 * (cycles + 1) * adv.r0 / m.v *
      std::max(1.0, std::ceil(1.0 / std::max(adv.beta, 0.1)));

  while (rep.cycles_completed < cycles) {
    if (t > budget)
      throw std::runtime_error(
          "appendix scenario: trigger never fired within the cycle budget "
          "(geometry misconfiguration)");
    const PolarState prev = s;
    s = heun_step(s, tack, dt, m);
    t += dt;
    track.observe(s);

    if (s.r <= m.eta) {
      rep.tau = t - dt + dt * (prev.r - m.eta) / (prev.r - s.r);
      rep.target_hit = true;
      record(Event::Hit);
      break;
    }

    if (phase == Phase::Beat) {
      if (!alpha1_known && s.r <= adv.r1) {
        // Interpolate the angle at the exact r1 crossing.
        const double f = (prev.r - adv.r1) / (prev.r - s.r);
        rep.alpha1 = wrap_angle(prev.theta + f * (s.theta - prev.theta));
        alpha1_known = true;
      }
      if (shifts) {
        const double th = wrap_angle(s.theta);
        if (mirror > 0 && th <= -adv.beta && th > kWindowLo) {
          shift_wind(adv.beta);
          continue;
        }
        if (mirror < 0 && th >= kHalfPi + adv.beta && th < kPi) {
          shift_wind(-adv.beta);
          continue;
        }
      }
    }

    if (decide_impulse_A(s, tack, m, adv.alpha, adv.r0, radial_slack) ==
        Action::Tack) {
      const double th = wrap_angle(s.theta);
      gamma = mirror > 0 ? -th : th - kHalfPi;
      rep.gamma_last = gamma;
      rep.tacks += 1;
      rep.cycles_completed += 1;
      rep.tack_radii.push_back(s.r);
      tack = flip(tack);
      record(Event::TackEvent);
      phase = Phase::Descend;
      continue;
    }

    if (phase == Phase::Descend && s.r <= adv.r1) {
      if (!alpha1_known)
        throw std::runtime_error(
            "appendix scenario: descended to r1 before alpha1 was measured");
      if (shifts) {
        shift_wind(mirror * (kHalfPi + gamma - rep.alpha1));
        phase = Phase::Beat;
        mirror = -mirror;
        continue;
      }
    }
    record(Event::None);
  }
  return rep;
}

ScenarioReport run_ninety_degree_loop(const ModelParams& m, double margin,
                                      int cycles, double start_r,
                                      double strategy_r0, double dt,
                                      bool shifts_enabled) {
  validate(m, false);
  if (!(margin > 0.0 && margin < kQuarterPi))
    throw std::invalid_argument("ninety-degree loop: margin must lie in ]0, pi/4[");
  if (!(start_r > m.eta && start_r < strategy_r0))
    throw std::invalid_argument("ninety-degree loop: need eta < start_r < r0");
  if (dt <= 0.0) dt = 1e-3 * start_r / m.v;

  ScenarioReport rep;
  rep.min_radius = rep.max_radius = start_r;
  Tracker track{&rep, m.eta};

  PolarState s{start_r, margin};
  Tack tack = Tack::Starboard;
  double t = 0.0;
  double beta_cum = 0.0;
  const double radial_slack = m.v * dt;

  auto& traj = rep.trajectory.records;
  const auto record = [&](Event ev) {
    traj.push_back({t, s.r, s.theta, sign(tack), beta_cum, ev});
  };
  record(Event::None);

  const double budget = 50.0 * (cycles + 1) * start_r / m.v;

  while (rep.tacks < cycles) {
    if (t > budget)
      throw std::runtime_error(
          "ninety-degree loop: trigger never fired within the cycle budget "
          "(geometry misconfiguration)");
    const double prev_r = s.r;
    s = heun_step(s, tack, dt, m);
    t += dt;
    track.observe(s);

    if (s.r <= m.eta) {
      rep.tau = t - dt + dt * (prev_r - m.eta) / (prev_r - s.r);
      rep.target_hit = true;
      record(Event::Hit);
      break;
    }

    if (decide_impulse_A(s, tack, m, margin, strategy_r0, radial_slack) ==
        Action::Tack) {
      const bool was_starboard = tack == Tack::Starboard;
      rep.tacks += 1;
      tack = flip(tack);
      record(Event::TackEvent);
      if (shifts_enabled) {
        const double d_beta = was_starboard ? kHalfPi : -kHalfPi;
        beta_cum += d_beta;
        s.theta += d_beta;
        rep.shifts += 1;
        record(Event::WindShift);
      }
      rep.cycles_completed = rep.tacks;
      rep.cycle_end_radii.push_back(s.r);
      continue;
    }
    record(Event::None);
  }
  return rep;
}

}  // namespace sail
