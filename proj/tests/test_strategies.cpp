#include <doctest.h>

#include "sail/strategies.hpp"

using namespace sail;
using doctest::Approx;

namespace {
const ModelParams kModel{1.0, 1.0, 0.5, 0.1};
const double kAlpha = kPi / 8.0;
const double kR0 = 1.0;
}  // namespace

TEST_CASE("region classification") {
  const double mid = 0.5 * (kModel.eta + kR0);
  CHECK(classify_region({mid, -kAlpha}, kModel, kAlpha, kR0) == RegionId::D1_1);
  CHECK(classify_region({kR0, 1.5 * kPi + 0.01}, kModel, kAlpha, kR0) ==
        RegionId::D1_2);
  CHECK(classify_region({mid, kHalfPi}, kModel, kAlpha, kR0) == RegionId::C1);
  CHECK(classify_region({mid, kHalfPi + kAlpha}, kModel, kAlpha, kR0) ==
        RegionId::Dm1_1);
  CHECK(classify_region({kR0, kHalfPi}, kModel, kAlpha, kR0) == RegionId::Dm1_2);
  // Open r0 boundary for the inner set: at r = r0, theta = -alpha belongs
  // to the boundary set instead.
  CHECK(classify_region({kR0, -kAlpha}, kModel, kAlpha, kR0) == RegionId::D1_2);
  // Outside the disk: continuation by convention.
  CHECK(classify_region({2.0 * kR0, -kAlpha}, kModel, kAlpha, kR0) ==
        RegionId::C1);
  // Just inside the no-tack sliver (-alpha, 0].
  CHECK(classify_region({mid, -0.5 * kAlpha}, kModel, kAlpha, kR0) ==
        RegionId::C1);
}

TEST_CASE("impulse decision rule") {
  const double mid = 0.5 * (kModel.eta + kR0);
  const PolarState in_d1{mid, -kAlpha};
  CHECK(decide_impulse_A(in_d1, Tack::Starboard, kModel, kAlpha, kR0) ==
        Action::Tack);
  // D^1 is inside the port continuation region.
  CHECK(decide_impulse_A(in_d1, Tack::Port, kModel, kAlpha, kR0) ==
        Action::Hold);
  CHECK(decide_impulse_A({mid, kHalfPi}, Tack::Starboard, kModel, kAlpha,
                         kR0) == Action::Hold);
  // Radial slack admits the discrete overshoot of the r0 circle.
  CHECK(decide_impulse_A({kR0 + 1e-4, -0.01}, Tack::Starboard, kModel, kAlpha,
                         kR0, 1e-3) == Action::Tack);
  CHECK(decide_impulse_A({kR0 + 1e-2, -0.01}, Tack::Starboard, kModel, kAlpha,
                         kR0, 1e-3) == Action::Hold);
}

TEST_CASE("initial reduction and symmetries") {
  const PolarState s{0.7, 0.3};
  const auto red = initial_reduction(s, Tack::Port);
  CHECK(red.second == Tack::Starboard);
  CHECK(red.first.theta == Approx(wrap_angle(kHalfPi - 0.3)));
  CHECK(red.first.r == s.r);

  // Starboard starts pass through.
  const auto same = initial_reduction({0.7, kQuarterPi}, Tack::Starboard);
  CHECK(same.second == Tack::Starboard);
  CHECK(same.first.theta == Approx(kQuarterPi));

  // The mirror itself is an involution.
  const auto once = mirror_state(s, Tack::Starboard);
  const auto twice = mirror_state(once.first, once.second);
  CHECK(twice.second == Tack::Starboard);
  CHECK(twice.first.theta == Approx(wrap_angle(s.theta)));

  // Second symmetry is an involution too.
  const auto line = second_symmetry(second_symmetry(s));
  CHECK(line.theta == Approx(wrap_angle(s.theta)));
}

TEST_CASE("mirror maps the tacking regions onto each other") {
  // (r, theta) in D^1 iff (r, pi/2 - theta) in D^{-1}.
  for (int i = 0; i < 2000; ++i) {
    const double th = kWindowLo + i * (kTwoPi / 2000.0);
    const PolarState s{0.6, th};
    const auto m = mirror_state(s, Tack::Starboard);
    const bool d1 =
        decide_impulse_A(s, Tack::Starboard, kModel, kAlpha, kR0) ==
        Action::Tack;
    const bool dm1 =
        decide_impulse_A(m.first, Tack::Port, kModel, kAlpha, kR0) ==
        Action::Tack;
    CHECK(d1 == dm1);
  }
}

TEST_CASE("strategy validation") {
  StrategyKind k;
  k.id = StrategyId::ImpulseA;
  k.impulse = {0.6, 1.0};
  CHECK_THROWS(validate(k, kModel));  // alpha > pi/8
  k.impulse = {kPi / 8.0, 0.05};
  CHECK_THROWS(validate(k, kModel));  // r0 <= eta
  k.impulse = {kPi / 8.0, 1.0};
  CHECK_NOTHROW(validate(k, kModel));
}
