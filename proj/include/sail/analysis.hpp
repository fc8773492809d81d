#pragma once

#include <cstdint>
#include <vector>

#include "sail/engine.hpp"

namespace sail {

struct McEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  long n = 0;              // hit paths entering the mean
  long timeout_count = 0;  // excluded from the mean, reported
};

// Analytic constants of the impulse-strategy bound chain and the derived
// upper bounds on E[M], E[tau], V^{c,eta} and the feedback hitting time.
struct BoundsReport {
  double K = 0.0;        // sigma^-2 (alpha + 3pi/4)^2
  double d1 = 0.0;       // sin(alpha/2) tan(alpha) + 1
  double d2 = 0.0;       // (sin(alpha/2)+tan(alpha)) cos(alpha)/cos(2 alpha)
  double Gamma_r = 0.0;  // (1/cos(alpha)+1)(r-eta)/v + (d1+d2) r/v
  double c1 = 0.0;
  double c2 = 0.0;
  double c1c2 = 0.0;
  double p0 = 0.0;  // P{sup_{t<=Gamma(r0)} |sigma B_t| < alpha/2}
  double E_M_bound = 0.0;      // 2/p0 - 1
  double E_tau_bound = 0.0;    // 2 K / p0
  double V_c_eta_bound = 0.0;  // K(1+2/p0) + c(1+2/p0)
  double astar_tau_bound = 0.0;  // sqrt(2) (r_start - eta)/v
  bool c1c2_below_one = false;   // what strict contraction per cycle needs
  bool c1c2_below_three_quarters = false;  // the stated 3/4, recorded as-is
};

BoundsReport compute_bounds(const ModelParams& m, double alpha, double r0,
                            double r_start);

// P{ sup_{0<=t<=T} |sigma B_t| < half_width }, by the alternating
// exponential series for Brownian non-exit from a symmetric strip,
// truncated below 1e-12.
double strip_stay_prob(double half_width, double T, double sigma);

// Set a Brownian wind's (sigma, seed) from the config's model and seed.
void seed_brownian(SimConfig& cfg);

// Independent paths 0..n-1; results indexed by path so the reduction order
// never depends on worker scheduling.
std::vector<RunResult> run_batch(const SimConfig& cfg, PolarState start,
                                 Tack tack, long n_paths, int workers = 1);

McEstimate summarize(const std::vector<double>& values, long timeout_count);

// Mean payoff (tau + c M for the impulse strategy, tau for the feedback
// one) over hit paths. Throws if every path timed out.
McEstimate estimate_payoff(const SimConfig& cfg, PolarState start, Tack tack,
                           long n_paths, int workers = 1);

struct TailEntry {
  int i = 0;
  double p_hat = 0.0;    // empirical P{psi_i < tau}
  double stderr_ = 0.0;  // binomial
  double bound = 0.0;    // (1 - p0)^floor(i/2)
};

std::vector<TailEntry> tack_tail_distribution(const SimConfig& cfg,
                                              PolarState start, Tack tack,
                                              long n_paths, int max_i,
                                              int workers = 1);

struct SymmetryReport {
  McEstimate base;         // (r, theta, starboard)
  McEstimate mirror_tack;  // (r, pi/2 - theta, port)
  McEstimate mirror_line;  // (r, 3pi/2 - theta, starboard)
  double diff_tack = 0.0, diff_line = 0.0;
  double tol_tack = 0.0, tol_line = 0.0;  // 3 x combined stderr
  bool pass_tack = false, pass_line = false, pass = false;
};

SymmetryReport symmetry_check(const SimConfig& cfg, PolarState start,
                              long n_paths, int workers = 1);

// Monte-Carlo value surface V(r, theta) ~ E[tau] under the feedback
// strategy, on a uniform (r, theta) grid; bilinear interpolation with
// periodic theta.
struct ValueGrid {
  double eta = 0.0, r_max = 0.0;
  int nr = 0, ntheta = 0;
  std::vector<double> value;  // nr * ntheta, row-major in r
  double at(double r, double theta) const;
};

ValueGrid build_value_grid(const SimConfig& astar_cfg, double r_max, int nr,
                           int ntheta, long paths_per_node, int workers = 1);

// Drift estimate of N(t) = t + V(R_t, Theta_t) along fresh paths; one
// random sub-interval per path so samples are independent. A martingale
// has zero drift under the feedback strategy and nonnegative drift
// (submartingale) otherwise.
struct MartingaleReport {
  double drift_mean = 0.0;   // per unit time
  double drift_stderr = 0.0;
  long n = 0;
  bool ci_contains_zero = false;
  bool submartingale_ok = false;  // drift >= -3 stderr
  bool grid_coarse_flag = false;
};

MartingaleReport martingale_diagnostic(const SimConfig& cfg, PolarState start,
                                       Tack tack, const ValueGrid& grid,
                                       long n_paths, int stride,
                                       int workers = 1);

enum class ConvergenceRegime { ConstantVelocity, Radial };

struct ConvergenceRow {
  double dt = 0.0;
  double rms_error = 0.0;
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
  double slope = 0.0;  // log-log fit of rms error vs dt
  long regime_exits = 0;  // radial regime: paths that left the branch
};

// Strong endpoint error of Euler at each dt against the closed-form
// solution evaluated on a fine grid of the same Brownian path.
ConvergenceTable convergence_study(const ModelParams& m,
                                   const std::vector<double>& dts,
                                   int n_paths, ConvergenceRegime regime,
                                   std::uint64_t seed, double T,
                                   double fine_dt = 0.0);

}  // namespace sail
