#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sail/angles.hpp"
#include "sail/params.hpp"

namespace sail {

// Tack: +1 starboard (wind over the right side), -1 port.
enum class Tack : int { Starboard = +1, Port = -1 };

inline int sign(Tack a) { return static_cast<int>(a); }
inline Tack flip(Tack a) {
  return a == Tack::Starboard ? Tack::Port : Tack::Starboard;
}

struct PolarState {
  double r = 0.0;      // distance to target center, >= 0
  double theta = 0.0;  // unwrapped angle; wrap only at evaluation
};

struct CartesianState {
  double x = 0.0;
  double y = 0.0;
};

// ---------------------------------------------------------------------------
// Polar drifts. Piecewise on the window [-pi/4, 7pi/4), half-open exactly as
// stated; extended to R by 2pi-periodicity. Values in [-v, v].
// ---------------------------------------------------------------------------

// Radial drift dR/dt for tack a.
inline double mu1(double theta, Tack a, double v) {
  const double th = wrap_angle(theta);
  if (a == Tack::Starboard) {
    if (th < kHalfPi) return -v * std::sin(th);  // [-pi/4, pi/2)
    if (th < kPi) return -v;                     // [pi/2, pi)
    return v * std::cos(th);                     // [pi, 7pi/4)
  }
  if (th < 0.0 || th >= 1.5 * kPi) return -v;        // [-pi/4,0) u [3pi/2,7pi/4)
  if (th < 0.75 * kPi) return -v * std::cos(th);     // [0, 3pi/4)
  return v * std::sin(th);                           // [3pi/4, 3pi/2)
}

// Angular drift component of dTheta/dt (excluding the sigma dB term).
inline double mu2(double r, double theta, Tack a, double v) {
  if (r <= 0.0) throw std::domain_error("mu2: r must be positive");
  const double th = wrap_angle(theta);
  if (a == Tack::Starboard) {
    if (th < kHalfPi) return -v * std::cos(th) / r;  // [-pi/4, pi/2)
    if (th < kPi) return 0.0;                        // [pi/2, pi)
    return -v * std::sin(th) / r;                    // [pi, 7pi/4)
  }
  if (th < 0.0 || th >= 1.5 * kPi) return 0.0;       // [-pi/4,0) u [3pi/2,7pi/4)
  if (th < 0.75 * kPi) return v * std::sin(th) / r;  // [0, 3pi/4)
  return v * std::cos(th) / r;                       // [3pi/4, 3pi/2)
}

// ---------------------------------------------------------------------------
// Cartesian description. The race field splits into zones I..IV; each
// (zone, tack) pair selects one of the five velocity vectors
// v_u=(0,v), v_d=(0,-v), v_l=(-v,0), v_r=(v,0), v_rho=-v x/|x|,
// to which the circle-Brownian drift mu_c(x) = -(sigma^2/2) x is added.
// ---------------------------------------------------------------------------

enum class Zone { I, II, III, IV };

// Zone by the strict inequalities defining I, II^a, II^b, III, IV^a, IV^b
// and the half-lines d^{+-1}. Points on the coordinate axes are not covered
// by those inequalities; they resolve through the wrapped-angle convention
// of the polar branches (measure-zero tie rule).
Zone classify_zone(const CartesianState& p);

// Diffusion column Sigma(x,y) = (-sigma y, sigma x).
inline CartesianState sigma_cart(const CartesianState& p, double sigma) {
  return {-sigma * p.y, sigma * p.x};
}

// Full Cartesian drift mu(x, a) for tack a, including mu_c.
CartesianState mu_cart(const CartesianState& p, Tack a, const ModelParams& m);

// ---------------------------------------------------------------------------
// Closed-form solutions.
// ---------------------------------------------------------------------------

// Constant-velocity solution. sigma_b holds sigma*B at uniform grid times
// k*grid_dt, k = 0..n-1; t must lie on the grid (within rounding). Time
// integrals use the trapezoidal rule on that grid.
CartesianState closed_form_velocity(const CartesianState& x0, double v1,
                                    double v2,
                                    const std::vector<double>& sigma_b,
                                    double grid_dt, double t);

// Radial-motion solution ((|x0|-vt) cos(sigma B_t + theta0), ... sin ...),
// valid for 0 <= t <= (|x0|-eta)/v.
CartesianState closed_form_radial(const CartesianState& x0,
                                  const ModelParams& m, double sigma_b_t,
                                  double t);

// ---------------------------------------------------------------------------
// Feedback strategy drift pieces.
// ---------------------------------------------------------------------------

// Feedback tack choice: starboard on [pi/4, 5pi/4) mod 2pi, port otherwise.
// The half-open bracket is the tie rule on the main diagonal.
inline Tack a_star(double theta) {
  const double th = wrap_angle(theta);
  return (th >= kQuarterPi && th < 1.25 * kPi) ? Tack::Starboard : Tack::Port;
}

// (mu1, mu2) under the feedback choice; first component <= -v/sqrt(2).
inline std::pair<double, double> mu_star(double r, double theta, double v) {
  const Tack a = a_star(theta);
  return {mu1(theta, a, v), mu2(r, theta, a, v)};
}

// Smallest n with 1/n < eta. Requires eta > 0.
int n_eta(double eta);

// Canonical damping index: n = ceil(2/eta), so eta - 1/n >= eta/2.
int default_damping_n(double eta);

// Damping factor phi_n: 0 on [0, eta-1/n], linear n(r-eta)+1 on
// (eta-1/n, eta), 1 on [eta, inf).
double phi_damping(double r, double eta, int n);

// Reduced-representation tack rule: theta -> pi/2 - theta, wrapped.
inline double tack_jump(double theta) { return wrap_angle(kHalfPi - theta); }

// ---------------------------------------------------------------------------
// Coordinate transforms.
// ---------------------------------------------------------------------------

// theta = arctan(y/x) for x>0, pi + arctan(y/x) for x<0, wrapped into the
// canonical window. Origin is a domain error.
PolarState to_polar(const CartesianState& p);
CartesianState from_polar(const PolarState& s);

// Rotating-frame point -> geographic frame (xi1 north-to-south, xi2
// west-to-east) for wind angle beta. Display-only convention: a fixed
// rotation aligns the theta=0 ray with the beta=0 port layline
// (xi2 = -xi1), then the frame turns with the wind so that paths stay
// continuous across wind-angle jumps (Theta jumps by +dbeta in the
// rotating frame). Returned as (x, y) = (xi1, xi2).
CartesianState to_geographic(const CartesianState& p, double beta);

}  // namespace sail
