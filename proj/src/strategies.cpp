#include "sail/strategies.hpp"

namespace sail {

RegionId classify_region(const PolarState& s, const ModelParams& m,
                         double alpha, double r0) {
  const double th = wrap_angle(s.theta);
  const double r = s.r;
  if (r > m.eta && r < r0 && in_d1_angular_inner(th, alpha)) return RegionId::D1_1;
  if (r == r0 && in_d1_angular_boundary(th)) return RegionId::D1_2;
  if (r > m.eta && r < r0 && in_dm1_angular_inner(th, alpha)) return RegionId::Dm1_1;
  if (r == r0 && in_dm1_angular_boundary(th)) return RegionId::Dm1_2;
  return RegionId::C1;
}

EntryKind impulse_entry_kind(const PolarState& s, Tack tack,
                             const ModelParams& m, double alpha, double r0,
                             double radial_slack) {
  const double th = wrap_angle(s.theta);
  const double r = s.r;
  const bool boundary_window = tack == Tack::Starboard
                                   ? in_d1_angular_boundary(th)
                                   : in_dm1_angular_boundary(th);
  const bool inner_window = tack == Tack::Starboard
                                ? in_d1_angular_inner(th, alpha)
                                : in_dm1_angular_inner(th, alpha);
  if (r >= r0) {
    // Beyond the slack band the state is a flagged out-of-disk start;
    // treat as continuation until it re-enters.
    if (r <= r0 + radial_slack && boundary_window) return EntryKind::Boundary;
    return EntryKind::None;
  }
  if (r > m.eta && inner_window) return EntryKind::Inner;
  return EntryKind::None;
}

Action decide_impulse_A(const PolarState& s, Tack tack, const ModelParams& m,
                        double alpha, double r0, double radial_slack) {
  return impulse_entry_kind(s, tack, m, alpha, r0, radial_slack) ==
                 EntryKind::None
             ? Action::Hold
             : Action::Tack;
}

}  // namespace sail
