#pragma once

#include "sail/engine.hpp"

namespace sail {

// Adversarial wind schedule parameters. beta is the per-shift wind turn
// (0 < beta < alpha; beta == 0 disables every shift and degenerates to
// constant wind), r1 the inner trigger radius close to r0, alpha0 the
// starting angle close to pi/4. alpha is the impulse strategy's width.
struct AdversarialParams {
  double r0 = 1.0;
  double alpha0 = kQuarterPi - 0.02;
  double alpha = kPi / 8.0;
  double beta = 0.3;
  double r1 = 0.95;
};

inline AdversarialParams default_adversarial(double r0, double alpha) {
  AdversarialParams p;
  p.r0 = r0;
  p.alpha = alpha;
  p.alpha0 = kQuarterPi - 0.02;
  p.r1 = 0.95 * r0;
  p.beta = 0.75 * alpha;
  return p;
}

struct ScenarioReport {
  Trajectory trajectory;
  int tacks = 0;
  int cycles_completed = 0;
  bool target_hit = false;
  double tau = 0.0;  // meaningful when target_hit
  double min_radius = 0.0;
  double max_radius = 0.0;
  double alpha1 = 0.0;      // measured at the first r1 crossing
  double gamma_last = 0.0;  // measured at the last boundary tack
  int shifts = 0;
  std::vector<double> tack_radii;        // radius at each tack
  std::vector<double> cycle_end_radii;   // ninety-degree loop
};

// Wind schedule of the Appendix: the boat starts at (r0, alpha0) on
// starboard under the impulse strategy; while it beats towards the
// no-cross line the wind turns +beta each time Theta reaches -beta
// (keeping the boat on the fresh port layline) until the boat exits on
// the r0 circle and tacks; the boat then descends radially to r1, where
// the wind turns by pi/2 + gamma - alpha1 and the mirrored half-cycle
// begins. One cycle = one tack. The number of +beta turns per cycle is
// however many the geometry needs (the printed three close the loop only
// when cos^3(beta) <= cos(alpha0)/cos(alpha), which no beta < alpha <=
// pi/8 satisfies; any variation of the schedule behaves alike).
ScenarioReport run_appendix_scenario(const ModelParams& m,
                                     const AdversarialParams& adv, int cycles,
                                     double dt = 0.0);

// The malicious-adversary loop: the boat beats on starboard near the port
// layline, overshoots by `margin` (the impulse strategy tacks at
// theta = -margin) and the wind immediately turns a quarter turn so the
// fresh tack's heading is antiparallel to the old one; turns alternate
// sign so the cycle closes. With shifts disabled the wind is constant and
// the boat fetches the target after one tack.
ScenarioReport run_ninety_degree_loop(const ModelParams& m, double margin,
                                      int cycles, double start_r,
                                      double strategy_r0, double dt = 0.0,
                                      bool shifts_enabled = true);

}  // namespace sail
