// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are pinned here, not tuned at run time.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "sail/analysis.hpp"
#include "sail/scenarios.hpp"

using namespace sail;

namespace {

int g_failures = 0;

void report(int idx, const char* name, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %d: %s — %s\n", pass ? "PASS" : "FAIL", idx,
              name, detail.c_str());
  if (!pass) ++g_failures;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

int workers() {
  const unsigned hc = std::thread::hardware_concurrency();
  return static_cast<int>(std::clamp(hc, 1u, 8u));
}

SimConfig astar_config(double sigma) {
  SimConfig cfg;
  cfg.model = {sigma, 1.0, 0.0, 1.0};
  cfg.strategy.id = StrategyId::FeedbackAStar;
  if (sigma == 0.0)
    cfg.wind = ConstantWind{0.0};
  else
    cfg.wind = BrownianCircleWind{sigma, cfg.seed};
  return cfg;
}

// The standard impulse-strategy parameter set of the suite.
SimConfig impulse_config(double sigma) {
  SimConfig cfg;
  cfg.model = {sigma, 1.0, 0.5, 0.1};
  cfg.strategy.id = StrategyId::ImpulseA;
  cfg.strategy.impulse = {kPi / 8.0, 1.0};
  cfg.wind = BrownianCircleWind{sigma, cfg.seed};
  return cfg;
}

void criterion_1() {
  SimConfig cfg = astar_config(0.0);
  cfg.dt = 1e-4;
  const auto res = run(cfg, {2.0, kQuarterPi}, Tack::Starboard);
  const double want = std::numbers::sqrt2;
  const bool pass = res.terminated == Terminated::Hit &&
                    res.tau >= want - 2e-4 && res.tau <= want + 2e-4;
  report(1, "constant-wind exact time", pass,
         "tau = " + fmt(res.tau) + ", target sqrt(2) +- 2e-4");
}

void criterion_2() {
  bool pass = true;
  std::string detail;
  for (double sigma : {0.5, 1.0, 2.0}) {
    SimConfig cfg = astar_config(sigma);
    cfg.dt = 1e-3;
    const double dt = 1e-3;
    const double bound = std::numbers::sqrt2 * (2.0 - 1.0) / 1.0 + 2.0 * dt;
    const auto results =
        run_batch(cfg, {2.0, kQuarterPi}, Tack::Starboard, 10000, workers());
    double worst_tau = 0.0, worst_hi = -1e9, worst_lo = 0.0;
    for (const auto& r : results) {
      if (r.terminated != Terminated::Hit) pass = false;
      worst_tau = std::max(worst_tau, r.tau);
      worst_hi = std::max(worst_hi, r.max_step_dr);
      worst_lo = std::min(worst_lo, r.min_step_dr);
    }
    if (worst_tau > bound) pass = false;
    if (worst_lo < -1.0 * dt - 1e-15) pass = false;
    if (worst_hi > -dt / std::numbers::sqrt2 + 1e-15) pass = false;
    detail += "sigma=" + fmt(sigma) + ": max tau " + fmt(worst_tau) + " <= " +
              fmt(bound) + "; ";
  }
  report(2, "feedback pathwise bound, 3x10^4 paths", pass, detail);
}

struct BatchOut {
  std::vector<RunResult> results;
  BoundsReport bounds;
  double dt = 0.0;
  PolarState start;
};

BatchOut standard_batch(double sigma, long n) {
  SimConfig cfg = impulse_config(sigma);
  BatchOut out;
  out.start = {1.0, kHalfPi};  // inside S = ]eta, r0] x [pi/2 +- alpha]
  out.dt = effective_dt(cfg, out.start.r);
  out.results = run_batch(cfg, out.start, Tack::Starboard, n, workers());
  out.bounds = compute_bounds(cfg.model, cfg.strategy.impulse.alpha,
                              cfg.strategy.impulse.r0, out.start.r);
  return out;
}

void criterion_3(const BatchOut& b) {
  std::vector<double> taus, tacks;
  long timeouts = 0;
  for (const auto& r : b.results) {
    if (r.terminated == Terminated::Hit) {
      taus.push_back(r.tau);
      tacks.push_back(static_cast<double>(r.tacks));
    } else {
      ++timeouts;
    }
  }
  const auto te = summarize(taus, timeouts);
  const auto me = summarize(tacks, timeouts);
  const bool pass = te.mean <= b.bounds.E_tau_bound + 3.0 * te.stderr_ &&
                    me.mean <= b.bounds.E_M_bound + 3.0 * me.stderr_ &&
                    timeouts == 0;
  report(3, "bound chain E[tau], E[M]", pass,
         "E[tau] = " + fmt(te.mean) + " <= " + fmt(b.bounds.E_tau_bound) +
             ", E[M] = " + fmt(me.mean) + " <= " + fmt(b.bounds.E_M_bound) +
             ", timeouts = " + std::to_string(timeouts));
}

void criterion_4(const BatchOut& b) {
  bool pass = true;
  const double n = static_cast<double>(b.results.size());
  std::string detail = "p0 = " + fmt(b.bounds.p0) + "; ";
  for (int i = 2; i <= 10; ++i) {
    long count = 0;
    for (const auto& r : b.results)
      if (r.tacks >= i) ++count;
    const double p_hat = count / n;
    const double se = std::sqrt(std::max(0.0, p_hat * (1.0 - p_hat) / n));
    const double bound = std::pow(1.0 - b.bounds.p0, std::floor(i / 2.0));
    if (p_hat > bound + 3.0 * se) pass = false;
    if (i <= 4) detail += "P{psi_" + std::to_string(i) + "<tau} = " +
                          fmt(p_hat) + " <= " + fmt(bound) + "; ";
  }
  report(4, "geometric tack tail, i = 2..10", pass, detail);
}

bool calm_assertions(const BatchOut& b, double v, long& fired) {
  bool ok = true;
  for (const auto& r : b.results) {
    if (r.terminated != Terminated::Hit || !r.e1) continue;
    ++fired;
    if (!(r.tau < b.bounds.Gamma_r + 2.0 * b.dt)) ok = false;
    if (r.tacks > 1) ok = false;
    if (!(r.max_radius <= r.start_r + v * b.dt)) ok = false;
  }
  return ok;
}

void criterion_5(const BatchOut& b) {
  long fired = 0;
  bool pass = calm_assertions(b, 1.0, fired);
  // sigma = 1 makes E1 astronomically rare; a low-sigma companion batch
  // exercises the same assertions non-vacuously.
  BatchOut calm = standard_batch(0.15, 4000);
  long fired_calm = 0;
  if (!calm_assertions(calm, 1.0, fired_calm)) pass = false;
  if (fired_calm == 0) pass = false;
  report(5, "calm-wind corollary on E1 paths", pass,
         "E1 fired on " + std::to_string(fired) + "/10^4 at sigma=1 and " +
             std::to_string(fired_calm) + "/4000 at sigma=0.15; all within "
             "Gamma(r), M <= 1, radius confined");
}

void criterion_6() {
  const auto b = compute_bounds({1.0, 1.0, 0.5, 0.1}, kPi / 8.0, 1.0, 1.0);
  const double v = b.c1c2 * b.c1c2;
  const bool pass = std::abs(v - 0.72) <= 0.01;
  report(6, "constant check c1^2 c2^2 at alpha = pi/8", pass,
         "c1^2 c2^2 = " + fmt(v) + " (0.72 +- 0.01); c1 c2 = " + fmt(b.c1c2) +
             ", stated <= 3/4 claim " +
             (b.c1c2_below_three_quarters ? "holds" : "fails numerically") +
             ", < 1 " + (b.c1c2_below_one ? "holds" : "fails"));
}

void criterion_7() {
  SimConfig cfg = impulse_config(1.0);
  const auto rep = symmetry_check(cfg, {1.0, kHalfPi}, 10000, workers());
  const bool pass = rep.pass_tack && rep.pass_line;
  report(7, "tack and line symmetries of the payoff", pass,
         "|dJ_tack| = " + fmt(rep.diff_tack) + " <= " + fmt(rep.tol_tack) +
             ", |dJ_line| = " + fmt(rep.diff_line) + " <= " +
             fmt(rep.tol_line));
}

void criterion_8() {
  const ModelParams m{1.0, 1.0, 0.0, 0.1};
  const auto tab = convergence_study(m, {1e-2, 1e-3, 1e-4}, 100,
                                     ConvergenceRegime::ConstantVelocity,
                                     1234, 1.0);
  bool pass = tab.rows.size() == 3 &&
              tab.rows[0].rms_error > tab.rows[1].rms_error &&
              tab.rows[1].rms_error > tab.rows[2].rms_error &&
              tab.slope >= 0.4;
  const ModelParams mr{0.5, 1.0, 0.0, 0.1};
  const auto tabr = convergence_study(mr, {1e-2, 1e-3}, 50,
                                      ConvergenceRegime::Radial, 1235, 1.0);
  double worst = 0.0;
  for (const auto& row : tabr.rows) worst = std::max(worst, row.rms_error);
  if (worst > 1e-12) pass = false;
  report(8, "closed-form oracles: strong order and exact radial drift", pass,
         "errors = {" + fmt(tab.rows[0].rms_error) + ", " +
             fmt(tab.rows[1].rms_error) + ", " + fmt(tab.rows[2].rms_error) +
             "}, slope = " + fmt(tab.slope) + "; radial error " + fmt(worst));
}

void criterion_9() {
  const ModelParams m{1.0, 1.0, 0.5, 0.1};
  const auto adv = default_adversarial(1.0, kPi / 8.0);
  const double dt = 1e-3;
  bool pass = true;
  std::string detail;
  try {
    const auto rep = run_appendix_scenario(m, adv, 10, dt);
    const double floor = adv.r1 * std::cos(rep.alpha1) - m.v * dt;
    pass = !rep.target_hit && rep.tacks >= 10 && rep.min_radius >= floor &&
           rep.max_radius <= adv.r0 + m.v * dt;
    detail = "10 cycles: radius in [" + fmt(rep.min_radius) + ", " +
             fmt(rep.max_radius) + "] vs [" + fmt(floor) + ", " +
             fmt(adv.r0 + m.v * dt) + "], tacks = " +
             std::to_string(rep.tacks) + "; ";
  } catch (const std::exception& e) {
    pass = false;
    detail = std::string("scenario error: ") + e.what() + "; ";
  }

  // Brownian-wind companion: the adversarial confinement has probability
  // zero, so every (non-timeout) impulse path reaches the target.
  SimConfig cfg = impulse_config(1.0);
  const auto results =
      run_batch(cfg, {1.0, kHalfPi}, Tack::Starboard, 1000, workers());
  long timeouts = 0;
  for (const auto& r : results)
    if (r.terminated != Terminated::Hit) ++timeouts;
  if (timeouts >= 1) pass = false;  // < 0.1% of 1000 means none
  detail += "Brownian companion: " + std::to_string(1000 - timeouts) +
            "/1000 paths hit, timeouts = " + std::to_string(timeouts);
  report(9, "adversarial confinement vs Brownian viability", pass, detail);
}

std::string slurp(const std::string& path) {
  std::ifstream is(path);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

void criterion_10() {
#ifdef SAILSIM_CLI_PATH
  const std::string cli = SAILSIM_CLI_PATH;
  const std::string base =
      "\"" + cli +
      "\" montecarlo --strategy impulse-a --sigma 1 --v 1 --eta 0.1 --c 0.5 "
      "--alpha 0.39269908169872414 --r0 1 --r 1 --theta 1.5707963267948966 "
      "--n 2000 --seed 4242";
  const int rc1 = std::system((base + " --workers 1 --out acc_w1.json").c_str());
  const int rc2 = std::system((base + " --workers 1 --out acc_w1b.json").c_str());
  const int rc3 = std::system((base + " --workers 8 --out acc_w8.json").c_str());
  const std::string a = slurp("acc_w1.json");
  const std::string b = slurp("acc_w1b.json");
  const std::string c = slurp("acc_w8.json");
  const bool ran = rc1 != -1 && rc2 != -1 && rc3 != -1;
  const bool pass = ran && !a.empty() && a == b && a == c;
  report(10, "byte-identical reruns and worker invariance", pass,
         "repeat run " + std::string(a == b ? "identical" : "differs") +
             ", workers 1 vs 8 " + std::string(a == c ? "identical" : "differs"));
#else
  report(10, "byte-identical reruns and worker invariance", false,
         "CLI path not configured");
#endif
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  const BatchOut batch = standard_batch(1.0, 10000);
  criterion_3(batch);
  criterion_4(batch);
  criterion_5(batch);
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  if (g_failures == 0) {
    std::printf("all criteria passed\n");
    return 0;
  }
  std::printf("%d criteria failed\n", g_failures);
  return 1;
}
