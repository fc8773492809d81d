#include "sail/dynamics.hpp"

#include <cmath>

namespace sail {

Zone classify_zone(const CartesianState& p) {
  const double x = p.x, y = p.y;
  if (x > 0.0 && y > 0.0) return Zone::I;
  if (x < 0.0 && y < 0.0) return Zone::III;
  // II = II^a u II^b u d^{-1},  IV = IV^a u IV^b u d^{+1}
  if ((x < 0.0 && y > -x) || (y > 0.0 && y < -x)) return Zone::II;
  if ((y < 0.0 && y > -x) || (x > 0.0 && y < -x)) return Zone::IV;
  if (y == -x && x != 0.0) return x < 0.0 ? Zone::II : Zone::IV;
  // Coordinate axes: tie rule from the wrapped-angle branch convention.
  const double th = wrap_angle(std::atan2(y, x));
  if (th < kHalfPi) return th > 0.0 ? Zone::I : Zone::IV;
  if (th < kPi) return Zone::II;
  if (th < 1.5 * kPi) return Zone::III;
  return Zone::IV;
}

CartesianState mu_cart(const CartesianState& p, Tack a, const ModelParams& m) {
  const Zone z = classify_zone(p);
  const double v = m.v;
  double vx = 0.0, vy = 0.0;
  bool radial = false;
  if (a == Tack::Starboard) {
    switch (z) {
      case Zone::I:
        vy = -v;  // v_d; IV^a shares this branch below
        break;
      case Zone::IV:
        // IV^a (above d^1) moves downward, IV^b and d^1 move rightward.
        if (p.y > -p.x)
          vy = -v;
        else
          vx = v;
        break;
      case Zone::III:
        vx = v;
        break;
      case Zone::II:
        radial = true;
        break;
    }
  } else {
    switch (z) {
      case Zone::I:
        vx = -v;
        break;
      case Zone::II:
        // II^a (above d^{-1}) moves leftward, II^b and d^{-1} move upward.
        if (p.y > -p.x)
          vx = -v;
        else
          vy = v;
        break;
      case Zone::III:
        vy = v;
        break;
      case Zone::IV:
        radial = true;
        break;
    }
  }
  if (radial) {
    const double n = std::hypot(p.x, p.y);
    if (n == 0.0)
      throw std::domain_error("mu_cart: radial branch undefined at the origin");
    vx = -v * p.x / n;
    vy = -v * p.y / n;
  }
  const double half_s2 = 0.5 * m.sigma * m.sigma;
  return {vx - half_s2 * p.x, vy - half_s2 * p.y};
}

CartesianState closed_form_velocity(const CartesianState& x0, double v1,
                                    double v2,
                                    const std::vector<double>& sigma_b,
                                    double grid_dt, double t) {
  if (sigma_b.empty() || grid_dt <= 0.0)
    throw std::invalid_argument("closed_form_velocity: empty path");
  const double kf = t / grid_dt;
  const auto k = static_cast<std::size_t>(std::llround(kf));
  if (std::abs(kf - static_cast<double>(k)) > 1e-9 || k >= sigma_b.size())
    throw std::out_of_range("closed_form_velocity: t not on the sampled grid");
  const double wt = sigma_b[k];
  // Trapezoidal integrals of cos/sin(W_t - W_s) over s in [0, t].
  double ic = 0.0, is = 0.0;
  if (k > 0) {
    double prev_c = std::cos(wt - sigma_b[0]);
    double prev_s = std::sin(wt - sigma_b[0]);
    for (std::size_t j = 1; j <= k; ++j) {
      const double c = std::cos(wt - sigma_b[j]);
      const double s = std::sin(wt - sigma_b[j]);
      ic += 0.5 * (prev_c + c) * grid_dt;
      is += 0.5 * (prev_s + s) * grid_dt;
      prev_c = c;
      prev_s = s;
    }
  }
  const double cw = std::cos(wt), sw = std::sin(wt);
  return {cw * x0.x - sw * x0.y + v1 * ic - v2 * is,
          sw * x0.x + cw * x0.y + v1 * is + v2 * ic};
}

CartesianState closed_form_radial(const CartesianState& x0,
                                  const ModelParams& m, double sigma_b_t,
                                  double t) {
  const double r0 = std::hypot(x0.x, x0.y);
  if (r0 == 0.0) throw std::domain_error("closed_form_radial: origin start");
  if (t < 0.0 || t > (r0 - m.eta) / m.v + 1e-12)
    throw std::out_of_range("closed_form_radial: t outside [0,(|x0|-eta)/v]");
  const double th0 = std::atan2(x0.y, x0.x);
  const double rad = r0 - m.v * t;
  return {rad * std::cos(sigma_b_t + th0), rad * std::sin(sigma_b_t + th0)};
}

int n_eta(double eta) {
  if (eta <= 0.0) throw std::domain_error("n_eta: eta must be positive");
  int n = static_cast<int>(1.0 / eta);
  if (n < 1) n = 1;
  while (1.0 / n >= eta) ++n;
  return n;
}

int default_damping_n(double eta) {
  const int n = static_cast<int>(std::ceil(2.0 / eta));
  return n >= n_eta(eta) ? n : n_eta(eta);
}

double phi_damping(double r, double eta, int n) {
  if (eta <= 0.0) throw std::domain_error("phi_damping: eta must be positive");
  if (n < n_eta(eta))
    throw std::domain_error("phi_damping: n below n_eta (1/n must be < eta)");
  if (r >= eta) return 1.0;
  if (r <= eta - 1.0 / n) return 0.0;
  return n * (r - eta) + 1.0;
}

PolarState to_polar(const CartesianState& p) {
  const double r = std::hypot(p.x, p.y);
  if (r == 0.0) throw std::domain_error("to_polar: origin has no angle");
  return {r, wrap_angle(std::atan2(p.y, p.x))};
}

CartesianState from_polar(const PolarState& s) {
  return {s.r * std::cos(s.theta), s.r * std::sin(s.theta)};
}

CartesianState to_geographic(const CartesianState& p, double beta) {
  // (east, north) = Rot(-beta) * Rot(-3pi/4) * (x, y); xi1 = -north, xi2 = east.
  const double phi = -beta - 0.75 * kPi;
  const double c = std::cos(phi), s = std::sin(phi);
  const double east = c * p.x - s * p.y;
  const double north = s * p.x + c * p.y;
  return {-north, east};
}

}  // namespace sail
