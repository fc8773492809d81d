#include "sail/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace sail {

BoundsReport compute_bounds(const ModelParams& m, double alpha, double r0,
                            double r_start) {
  validate(m, true);
  if (!(alpha > 0.0 && alpha <= kPi / 8.0 + 1e-9))
    throw std::invalid_argument("compute_bounds: alpha must lie in ]0, pi/8]");
  if (!(r0 > m.eta))
    throw std::invalid_argument("compute_bounds: r0 must exceed eta");
  if (!(r_start > m.eta && r_start <= r0))
    throw std::invalid_argument("compute_bounds: r_start must lie in ]eta, r0]");

  BoundsReport b;
  b.K = std::pow(alpha + 0.75 * kPi, 2) / (m.sigma * m.sigma);
  const double sa2 = std::sin(0.5 * alpha);
  const double ta = std::tan(alpha);
  b.d1 = sa2 * ta + 1.0;
  b.d2 = (sa2 + ta) * std::cos(alpha) / std::cos(2.0 * alpha);
  const auto gamma = [&](double r) {
    return (1.0 / std::cos(alpha) + 1.0) * (r - m.eta) / m.v +
           (b.d1 + b.d2) * r / m.v;
  };
  b.Gamma_r = gamma(r_start);
  const double c32 = std::cos(1.5 * alpha);
  b.c1 = std::sqrt(1.0 + (b.d1 - c32) * (b.d1 - c32) - c32 * c32);
  b.c2 = std::sqrt(1.0 + (b.d2 + sa2) * (b.d2 + sa2) - sa2 * sa2);
  b.c1c2 = b.c1 * b.c2;
  b.c1c2_below_one = b.c1c2 < 1.0;
  b.c1c2_below_three_quarters = b.c1c2 <= 0.75;
  b.p0 = strip_stay_prob(0.5 * alpha, gamma(r0), m.sigma);
  b.E_M_bound = 2.0 / b.p0 - 1.0;
  b.E_tau_bound = 2.0 * b.K / b.p0;
  b.V_c_eta_bound = (b.K + m.c) * (1.0 + 2.0 / b.p0);
  b.astar_tau_bound = std::numbers::sqrt2 * (r_start - m.eta) / m.v;
  return b;
}

double strip_stay_prob(double half_width, double T, double sigma) {
  if (half_width <= 0.0)
    throw std::invalid_argument("strip_stay_prob: half_width must be > 0");
  if (T < 0.0) throw std::invalid_argument("strip_stay_prob: T must be >= 0");
  if (T == 0.0) return 1.0;
  if (sigma <= 0.0) return 1.0;  // frozen wind never leaves the strip
  const double b = half_width / sigma;
  const double c = kPi * kPi * T / (8.0 * b * b);
  double sum = 0.0;
  for (int k = 0;; ++k) {
    const double m = 2.0 * k + 1.0;
    const double term = std::exp(-m * m * c) / m;
    sum += (k % 2 == 0) ? term : -term;
    if (term < 1e-12 || k > 200000) break;
  }
  return std::clamp(4.0 / kPi * sum, 0.0, 1.0);
}

void seed_brownian(SimConfig& cfg) {
  if (auto* b = std::get_if<BrownianCircleWind>(&cfg.wind)) {
    b->sigma = cfg.model.sigma;
    b->seed = cfg.seed;
  }
}

std::vector<RunResult> run_batch(const SimConfig& cfg, PolarState start,
                                 Tack tack, long n_paths, int workers) {
  if (n_paths < 1) throw std::invalid_argument("run_batch: n_paths must be >= 1");
  // Fail configuration problems on the calling thread.
  validate(cfg.model, std::holds_alternative<BrownianCircleWind>(cfg.wind));
  validate(cfg.strategy, cfg.model);
  std::vector<RunResult> results(static_cast<std::size_t>(n_paths));
  const int nw = std::max(1, workers);
  std::exception_ptr error;
  std::mutex error_mutex;
  const auto work = [&](long lo, long hi) {
    try {
      SimConfig local = cfg;
      for (long i = lo; i < hi; ++i) {
        local.path_index = static_cast<std::uint64_t>(i);
        results[static_cast<std::size_t>(i)] = run(local, start, tack);
      }
    } catch (...) {
      const std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  };
  if (nw == 1) {
    work(0, n_paths);
  } else {
    std::vector<std::thread> pool;
    const long chunk = (n_paths + nw - 1) / nw;
    for (int w = 0; w < nw; ++w) {
      const long lo = w * chunk;
      const long hi = std::min<long>(n_paths, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back(work, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
  return results;
}

McEstimate summarize(const std::vector<double>& values, long timeout_count) {
  McEstimate e;
  e.n = static_cast<long>(values.size());
  e.timeout_count = timeout_count;
  if (e.n == 0) return e;
  double sum = 0.0;
  for (double x : values) sum += x;
  e.mean = sum / static_cast<double>(e.n);
  if (e.n > 1) {
    double ss = 0.0;
    for (double x : values) ss += (x - e.mean) * (x - e.mean);
    e.stderr_ = std::sqrt(ss / static_cast<double>(e.n - 1)) /
                std::sqrt(static_cast<double>(e.n));
  }
  e.ci_lo = e.mean - 1.96 * e.stderr_;
  e.ci_hi = e.mean + 1.96 * e.stderr_;
  return e;
}

McEstimate estimate_payoff(const SimConfig& cfg, PolarState start, Tack tack,
                           long n_paths, int workers) {
  if (n_paths < 2)
    throw std::invalid_argument("estimate_payoff: n_paths must be >= 2");
  const auto results = run_batch(cfg, start, tack, n_paths, workers);
  std::vector<double> payoffs;
  payoffs.reserve(results.size());
  long timeouts = 0;
  for (const auto& r : results) {
    if (r.terminated == Terminated::Hit)
      payoffs.push_back(r.payoff);
    else
      ++timeouts;
  }
  if (payoffs.empty())
    throw std::runtime_error("estimate_payoff: every path timed out");
  return summarize(payoffs, timeouts);
}

std::vector<TailEntry> tack_tail_distribution(const SimConfig& cfg,
                                              PolarState start, Tack tack,
                                              long n_paths, int max_i,
                                              int workers) {
  if (cfg.strategy.id != StrategyId::ImpulseA)
    throw std::invalid_argument("tack_tail_distribution: impulse strategy only");
  const auto results = run_batch(cfg, start, tack, n_paths, workers);
  const auto bounds = compute_bounds(cfg.model, cfg.strategy.impulse.alpha,
                                     cfg.strategy.impulse.r0,
                                     std::min(start.r, cfg.strategy.impulse.r0));
  std::vector<TailEntry> table;
  const double n = static_cast<double>(n_paths);
  for (int i = 0; i <= max_i; ++i) {
    long count = 0;
    for (const auto& r : results)
      if (r.tacks >= i) ++count;  // psi_i < tau iff the i-th tack happened
    TailEntry e;
    e.i = i;
    e.p_hat = static_cast<double>(count) / n;
    e.stderr_ = std::sqrt(std::max(0.0, e.p_hat * (1.0 - e.p_hat) / n));
    e.bound = std::pow(1.0 - bounds.p0, std::floor(i / 2.0));
    table.push_back(e);
  }
  return table;
}

SymmetryReport symmetry_check(const SimConfig& cfg, PolarState start,
                              long n_paths, int workers) {
  if (cfg.strategy.id != StrategyId::ImpulseA)
    throw std::invalid_argument("symmetry_check: impulse strategy only");
  SymmetryReport rep;

  SimConfig base = cfg;
  base.representation = Representation::Reduced;
  seed_brownian(base);
  rep.base = estimate_payoff(base, start, Tack::Starboard, n_paths, workers);

  // Mirror starts get independent streams; equality is in distribution.
  SimConfig mt = base;
  mt.seed = cfg.seed + 1;
  mt.representation = Representation::Full;
  seed_brownian(mt);
  const auto mirrored = mirror_state(start, Tack::Starboard);
  rep.mirror_tack =
      estimate_payoff(mt, mirrored.first, mirrored.second, n_paths, workers);

  SimConfig ml = base;
  ml.seed = cfg.seed + 2;
  seed_brownian(ml);
  rep.mirror_line = estimate_payoff(ml, second_symmetry(start),
                                    Tack::Starboard, n_paths, workers);

  rep.diff_tack = std::abs(rep.base.mean - rep.mirror_tack.mean);
  rep.diff_line = std::abs(rep.base.mean - rep.mirror_line.mean);
  rep.tol_tack = 3.0 * std::hypot(rep.base.stderr_, rep.mirror_tack.stderr_);
  rep.tol_line = 3.0 * std::hypot(rep.base.stderr_, rep.mirror_line.stderr_);
  rep.pass_tack = rep.diff_tack <= rep.tol_tack;
  rep.pass_line = rep.diff_line <= rep.tol_line;
  rep.pass = rep.pass_tack && rep.pass_line;
  return rep;
}

double ValueGrid::at(double r, double theta) const {
  const double rc = std::clamp(r, eta, r_max);
  const double hr = (r_max - eta) / (nr - 1);
  const double fr = (rc - eta) / hr;
  int ir = std::min(static_cast<int>(fr), nr - 2);
  const double wr = fr - ir;

  const double ht = kTwoPi / ntheta;
  double ft = (wrap_angle(theta) - kWindowLo) / ht;
  int it = static_cast<int>(ft) % ntheta;
  const double wt = ft - static_cast<int>(ft);
  const int it1 = (it + 1) % ntheta;

  const auto v = [&](int i, int j) { return value[i * ntheta + j]; };
  return (1 - wr) * ((1 - wt) * v(ir, it) + wt * v(ir, it1)) +
         wr * ((1 - wt) * v(ir + 1, it) + wt * v(ir + 1, it1));
}

ValueGrid build_value_grid(const SimConfig& astar_cfg, double r_max, int nr,
                           int ntheta, long paths_per_node, int workers) {
  if (nr < 2 || ntheta < 2)
    throw std::invalid_argument("build_value_grid: grid too small");
  ValueGrid g;
  g.eta = astar_cfg.model.eta;
  g.r_max = r_max;
  g.nr = nr;
  g.ntheta = ntheta;
  g.value.assign(static_cast<std::size_t>(nr) * ntheta, 0.0);
  const double hr = (r_max - g.eta) / (nr - 1);
  const double ht = kTwoPi / ntheta;
  for (int i = 1; i < nr; ++i) {  // value at r = eta is identically 0
    for (int j = 0; j < ntheta; ++j) {
      const PolarState node{g.eta + i * hr, kWindowLo + j * ht};
      SimConfig cfg = astar_cfg;
      cfg.seed = astar_cfg.seed ^ (0x9E3779B97F4A7C15ull +
                                   static_cast<std::uint64_t>(i * ntheta + j));
      seed_brownian(cfg);
      const auto est =
          estimate_payoff(cfg, node, Tack::Starboard, paths_per_node, workers);
      g.value[static_cast<std::size_t>(i) * ntheta + j] = est.mean;
    }
  }
  return g;
}

MartingaleReport martingale_diagnostic(const SimConfig& cfg, PolarState start,
                                       Tack tack, const ValueGrid& grid,
                                       long n_paths, int stride,
                                       int workers) {
  if (!(cfg.model.eta > 0.0))
    throw std::invalid_argument("martingale_diagnostic: needs eta > 0");
  if (stride < 1) throw std::invalid_argument("martingale_diagnostic: stride");
  SimConfig c = cfg;
  c.record_trajectory = true;
  seed_brownian(c);

  std::vector<double> rates(static_cast<std::size_t>(n_paths));
  std::vector<char> valid(static_cast<std::size_t>(n_paths), 0);
  const int nw = std::max(1, workers);
  const auto work = [&](long lo, long hi) {
    SimConfig local = c;
    for (long p = lo; p < hi; ++p) {
      local.path_index = static_cast<std::uint64_t>(p);
      Trajectory traj;
      (void)run(local, start, tack, &traj);
      const auto& rec = traj.records;
      if (rec.size() < static_cast<std::size_t>(stride) + 1) continue;
      // One random window per path keeps the samples independent.
      NormalStream picker(local.seed ^ 0xABCDEF1234567890ull,
                          local.path_index);
      const std::size_t max_k = rec.size() - 1 - stride;
      const auto k = static_cast<std::size_t>(picker.uniform_at(0) *
                                              static_cast<double>(max_k + 1));
      const auto& a = rec[std::min(k, max_k)];
      const auto& b = rec[std::min(k, max_k) + stride];
      const double dn = (b.t - a.t) + grid.at(b.r, b.theta) -
                        grid.at(a.r, a.theta);
      rates[static_cast<std::size_t>(p)] = dn / (b.t - a.t);
      valid[static_cast<std::size_t>(p)] = 1;
    }
  };
  if (nw == 1) {
    work(0, n_paths);
  } else {
    std::vector<std::thread> pool;
    const long chunk = (n_paths + nw - 1) / nw;
    for (int w = 0; w < nw; ++w) {
      const long lo = w * chunk, hi = std::min<long>(n_paths, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back(work, lo, hi);
    }
    for (auto& th : pool) th.join();
  }

  std::vector<double> samples;
  for (long p = 0; p < n_paths; ++p)
    if (valid[static_cast<std::size_t>(p)])
      samples.push_back(rates[static_cast<std::size_t>(p)]);
  const auto est = summarize(samples, 0);
  MartingaleReport rep;
  rep.drift_mean = est.mean;
  rep.drift_stderr = est.stderr_;
  rep.n = est.n;
  rep.ci_contains_zero = std::abs(est.mean) <= 1.96 * est.stderr_;
  rep.submartingale_ok = est.mean >= -3.0 * est.stderr_;
  rep.grid_coarse_flag = std::abs(est.mean) > 3.0 * est.stderr_;
  return rep;
}

ConvergenceTable convergence_study(const ModelParams& m,
                                   const std::vector<double>& dts,
                                   int n_paths, ConvergenceRegime regime,
                                   std::uint64_t seed, double T,
                                   double fine_dt) {
  if (dts.empty()) throw std::invalid_argument("convergence_study: no dts");
  const double dt_min = *std::min_element(dts.begin(), dts.end());
  if (fine_dt <= 0.0) fine_dt = dt_min / 20.0;
  const auto n_fine = static_cast<std::size_t>(std::llround(T / fine_dt));

  ConvergenceTable table;
  std::vector<double> sum_sq(dts.size(), 0.0);
  long exits = 0;
  long used = 0;

  std::vector<double> w(n_fine + 1);
  for (int p = 0; p < n_paths; ++p) {
    NormalStream stream(seed, static_cast<std::uint64_t>(p));
    w[0] = 0.0;
    const double sdt = m.sigma * std::sqrt(fine_dt);
    for (std::size_t k = 0; k < n_fine; ++k)
      w[k + 1] = w[k] + sdt * stream.normal_at(k);

    if (regime == ConvergenceRegime::ConstantVelocity) {
      const CartesianState x0{2.0, 0.0};
      const double v1 = 0.0, v2 = -m.v;  // downward motion
      const CartesianState ref =
          closed_form_velocity(x0, v1, v2, w, fine_dt, T);
      for (std::size_t d = 0; d < dts.size(); ++d) {
        const auto ratio =
            static_cast<std::size_t>(std::llround(dts[d] / fine_dt));
        const auto n_steps = static_cast<std::size_t>(std::llround(T / dts[d]));
        CartesianState x = x0;
        for (std::size_t k = 0; k < n_steps; ++k) {
          // dw carries sigma dB already; Sigma(x) dB = (-y, x) dw.
          const double dw = w[(k + 1) * ratio] - w[k * ratio];
          const double hs2 = 0.5 * m.sigma * m.sigma;
          const CartesianState drift{-hs2 * x.x + v1, -hs2 * x.y + v2};
          x = {x.x + drift.x * dts[d] - x.y * dw,
               x.y + drift.y * dts[d] + x.x * dw};
        }
        const double err = std::hypot(x.x - ref.x, x.y - ref.y);
        sum_sq[d] += err * err;
      }
      ++used;
    } else {
      // Starboard radial branch: theta in [pi/2, pi). Reject paths that
      // leave the branch; the drift there is exactly (-v, 0).
      const double th0 = 0.75 * kPi;
      const double r0 = 2.0;
      bool stayed = true;
      for (std::size_t k = 0; k <= n_fine && stayed; ++k) {
        const double th = th0 + w[k];
        if (th < kHalfPi || th >= kPi) stayed = false;
      }
      if (!stayed) {
        ++exits;
        continue;
      }
      const CartesianState ref = closed_form_radial(
          from_polar({r0, th0}), m, w[n_fine], T);
      for (std::size_t d = 0; d < dts.size(); ++d) {
        const auto ratio =
            static_cast<std::size_t>(std::llround(dts[d] / fine_dt));
        const auto n_steps = static_cast<std::size_t>(std::llround(T / dts[d]));
        PolarState s{r0, th0};
        for (std::size_t k = 0; k < n_steps; ++k) {
          const double dw = w[(k + 1) * ratio] - w[k * ratio];
          s = {s.r + mu1(s.theta, Tack::Starboard, m.v) * dts[d],
               s.theta + mu2(s.r, s.theta, Tack::Starboard, m.v) * dts[d] + dw};
        }
        const CartesianState x = from_polar(s);
        const double err = std::hypot(x.x - ref.x, x.y - ref.y);
        sum_sq[d] += err * err;
      }
      ++used;
    }
  }

  if (used == 0)
    throw std::runtime_error("convergence_study: no usable paths");
  for (std::size_t d = 0; d < dts.size(); ++d)
    table.rows.push_back(
        {dts[d], std::sqrt(sum_sq[d] / static_cast<double>(used))});
  table.regime_exits = exits;

  // Least-squares slope of log(err) against log(dt).
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& row : table.rows) {
    const double lx = std::log(row.dt);
    const double ly = std::log(std::max(row.rms_error, 1e-300));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double n = static_cast<double>(table.rows.size());
  table.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return table;
}

}  // namespace sail
