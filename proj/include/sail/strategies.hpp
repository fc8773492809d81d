#pragma once

#include <stdexcept>

#include "sail/dynamics.hpp"

namespace sail {

// Impulse strategy parameters: tack trigger width alpha in ]0, pi/8] and
// outer radius r0 > eta.
struct ImpulseAParams {
  double alpha = kPi / 8.0;
  double r0 = 1.0;
};

enum class StrategyId { ImpulseA, FeedbackAStar };

struct StrategyKind {
  StrategyId id = StrategyId::FeedbackAStar;
  ImpulseAParams impulse;  // used when id == ImpulseA
};

inline void validate(const StrategyKind& k, const ModelParams& m) {
  if (k.id == StrategyId::ImpulseA) {
    if (!(k.impulse.alpha > 0.0 && k.impulse.alpha <= kPi / 8.0 + 1e-9))
      throw std::invalid_argument("impulse-a: alpha must lie in ]0, pi/8]");
    if (!(k.impulse.r0 > m.eta))
      throw std::invalid_argument("impulse-a: r0 must exceed eta");
  }
}

enum class Action { Hold, Tack };

// D^1 = D^1_1 u D^1_2 triggers a starboard tack, D^{-1} the port one;
// C^a is the corresponding continuation region in [eta,r0] x window.
enum class RegionId { D1_1, D1_2, Dm1_1, Dm1_2, C1, Cm1 };

// Angular membership of the tacking sets, brackets as stated.
inline bool in_d1_angular_inner(double th, double alpha) {
  return (th >= 1.5 * kPi + alpha) || (th >= kWindowLo && th <= -alpha);
}
inline bool in_d1_angular_boundary(double th) {
  return (th >= 1.5 * kPi) || (th >= kWindowLo && th <= 0.0);
}
inline bool in_dm1_angular_inner(double th, double alpha) {
  return th >= kHalfPi + alpha && th <= kPi - alpha;
}
inline bool in_dm1_angular_boundary(double th) {
  return th >= kHalfPi && th <= kPi;
}

// Exact-set region of a state. Points in neither tacking region report C1
// (they belong to both continuation regions; D^a is a subset of C^{-a}).
// States with r outside [eta, r0] classify as continuation by convention.
RegionId classify_region(const PolarState& s, const ModelParams& m,
                         double alpha, double r0);

// Tack iff the state lies in D^{tack}. radial_slack widens the r0 circle
// to [r0, r0 + radial_slack] so a discrete step can land on D^a_2; pass 0
// for the exact sets.
Action decide_impulse_A(const PolarState& s, Tack tack, const ModelParams& m,
                        double alpha, double r0, double radial_slack = 0.0);

// Entry classification used by the engine for stopping-time kinds.
enum class EntryKind { None, Inner, Boundary };  // D^a_1 vs D^a_2
EntryKind impulse_entry_kind(const PolarState& s, Tack tack,
                             const ModelParams& m, double alpha, double r0,
                             double radial_slack);

// Feedback policy: the prescribed tack at this angle.
inline Tack decide_a_star(const PolarState& s) { return a_star(s.theta); }

// Payoff-preserving mirror (r, theta, a) -> (r, pi/2 - theta, -a).
inline std::pair<PolarState, Tack> mirror_state(const PolarState& s, Tack a) {
  return {{s.r, wrap_angle(kHalfPi - s.theta)}, flip(a)};
}

// Map a port start to its payoff-equivalent starboard start; starboard
// starts pass through unchanged.
inline std::pair<PolarState, Tack> initial_reduction(const PolarState& s,
                                                     Tack a) {
  if (a == Tack::Starboard) return {{s.r, wrap_angle(s.theta)}, a};
  return mirror_state(s, a);
}

// Second symmetry about the y = -x line: theta -> 3pi/2 - theta, same tack.
inline PolarState second_symmetry(const PolarState& s) {
  return {s.r, wrap_angle(1.5 * kPi - s.theta)};
}

}  // namespace sail
