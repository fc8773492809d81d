// sailsim: simulate the stochastic sailing model, estimate value-function
// bounds by Monte Carlo, run the adversarial wind scenarios and plot
// trajectories. See README.md for the subcommands.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sail/analysis.hpp"
#include "sail/io.hpp"
#include "sail/scenarios.hpp"

using nlohmann::json;

namespace {

struct Options {
  double sigma = 1.0, v = 1.0, eta = 0.1, c = 0.0;
  std::string strategy = "a-star";
  double alpha = sail::kPi / 8.0, r0 = 1.0;
  double r = 1.0, theta = sail::kHalfPi;
  std::string tack = "starboard";
  double dt = 0.0, horizon = 0.0;
  std::uint64_t seed = sail::kDefaultSeed;
  int damping_n = 0;
  std::string wind_schedule;  // JSON file for scripted wind
};

void add_model_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--sigma", o.sigma, "wind variability sigma (0 = constant wind)");
  cmd->add_option("--v", o.v, "boat speed");
  cmd->add_option("--eta", o.eta, "target radius");
  cmd->add_option("--c", o.c, "tacking cost");
  cmd->add_option("--strategy", o.strategy, "a-star | impulse-a");
  cmd->add_option("--alpha", o.alpha, "impulse-a trigger width, ]0, pi/8]");
  cmd->add_option("--r0", o.r0, "impulse-a outer radius");
  cmd->add_option("--r", o.r, "start radius");
  cmd->add_option("--theta", o.theta, "start angle (rad)");
  cmd->add_option("--tack", o.tack, "starboard | port");
  cmd->add_option("--dt", o.dt, "time step (default 1e-3 * scale / v)");
  cmd->add_option("--horizon", o.horizon, "time horizon (default 200 * scale / v)");
  cmd->add_option("--seed", o.seed, "master seed (fixed default for reproducibility)");
  cmd->add_option("--damping-n", o.damping_n, "damped-coefficient index (a-star)");
  cmd->add_option("--wind-schedule", o.wind_schedule,
                  "JSON file with a scripted wind: [{\"t\":..,\"angle_rad\":..}]");
}

// Config file values fill in every flag the command line left untouched:
// defaults < file < flags.
void apply_config_file(CLI::App* cmd, Options& o, const std::string& path) {
  if (path.empty()) return;
  std::ifstream is(path);
  if (!is) throw CLI::ValidationError("--config", "cannot open " + path);
  json doc = json::parse(is);
  const auto set_d = [&](const char* flag, const char* key, double& slot) {
    const auto* opt = cmd->get_option_no_throw(flag);
    if (opt && opt->count() == 0 && doc.contains(key)) slot = doc[key];
  };
  set_d("--sigma", "sigma", o.sigma);
  set_d("--v", "v", o.v);
  set_d("--eta", "eta", o.eta);
  set_d("--c", "c", o.c);
  set_d("--alpha", "alpha", o.alpha);
  set_d("--r0", "r0", o.r0);
  set_d("--r", "r", o.r);
  set_d("--theta", "theta", o.theta);
  set_d("--dt", "dt", o.dt);
  set_d("--horizon", "horizon", o.horizon);
  const auto* opt = cmd->get_option_no_throw("--strategy");
  if (opt && opt->count() == 0 && doc.contains("strategy"))
    o.strategy = doc["strategy"];
  const auto* topt = cmd->get_option_no_throw("--tack");
  if (topt && topt->count() == 0 && doc.contains("tack")) o.tack = doc["tack"];
  const auto* sopt = cmd->get_option_no_throw("--seed");
  if (sopt && sopt->count() == 0 && doc.contains("seed"))
    o.seed = doc["seed"].get<std::uint64_t>();
  const auto* dopt = cmd->get_option_no_throw("--damping-n");
  if (dopt && dopt->count() == 0 && doc.contains("damping_n"))
    o.damping_n = doc["damping_n"].get<int>();
}

sail::SimConfig make_config(const Options& o) {
  sail::SimConfig cfg;
  cfg.model = {o.sigma, o.v, o.c, o.eta};
  if (o.strategy == "impulse-a") {
    cfg.strategy.id = sail::StrategyId::ImpulseA;
    cfg.strategy.impulse = {o.alpha, o.r0};
  } else if (o.strategy == "a-star") {
    cfg.strategy.id = sail::StrategyId::FeedbackAStar;
  } else {
    throw CLI::ValidationError("--strategy", "must be a-star or impulse-a");
  }
  cfg.dt = o.dt;
  cfg.horizon = o.horizon;
  cfg.seed = o.seed;
  cfg.damping_n = o.damping_n;
  if (!o.wind_schedule.empty()) {
    std::ifstream is(o.wind_schedule);
    if (!is)
      throw CLI::ValidationError("--wind-schedule",
                                 "cannot open " + o.wind_schedule);
    std::stringstream buf;
    buf << is.rdbuf();
    cfg.wind = sail::schedule_from_json_text(buf.str());
  } else if (o.sigma == 0.0) {
    cfg.wind = sail::ConstantWind{0.0};
  } else {
    cfg.wind = sail::BrownianCircleWind{o.sigma, o.seed};
  }
  sail::seed_brownian(cfg);
  return cfg;
}

sail::Tack parse_tack(const std::string& s) {
  if (s == "starboard" || s == "+1" || s == "1") return sail::Tack::Starboard;
  if (s == "port" || s == "-1") return sail::Tack::Port;
  throw CLI::ValidationError("--tack", "must be starboard or port");
}

json resolved_config_json(const Options& o) {
  json j;
  j["sigma"] = o.sigma;
  j["v"] = o.v;
  j["eta"] = o.eta;
  j["c"] = o.c;
  j["strategy"] = o.strategy;
  if (o.strategy == "impulse-a") {
    j["alpha"] = o.alpha;
    j["r0"] = o.r0;
  }
  j["r"] = o.r;
  j["theta"] = o.theta;
  j["tack"] = o.tack;
  j["dt"] = o.dt;
  j["horizon"] = o.horizon;
  j["seed"] = o.seed;
  j["damping_n"] = o.damping_n;
  if (!o.wind_schedule.empty()) j["wind_schedule"] = o.wind_schedule;
  return j;
}

void emit(const json& doc, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << doc.dump(2) << "\n";
  } else {
    std::ofstream os(out_path);
    if (!os) throw std::runtime_error("cannot open for writing: " + out_path);
    os << doc.dump(2) << "\n";
  }
}

int cmd_simulate(const Options& o, const std::string& out_csv,
                 bool geographic) {
  sail::SimConfig cfg = make_config(o);
  cfg.record_trajectory = !out_csv.empty();
  sail::Trajectory traj;
  const auto res = sail::run(cfg, {o.r, o.theta}, parse_tack(o.tack),
                             cfg.record_trajectory ? &traj : nullptr);
  if (!out_csv.empty()) sail::write_trajectory_csv_file(out_csv, traj, geographic);
  std::printf("tau = %.10g\n", res.tau);
  std::printf("tacks = %d\n", res.tacks);
  std::printf("payoff = %.10g\n", res.payoff);
  std::printf("terminated = %s\n",
              res.terminated == sail::Terminated::Hit ? "hit" : "timeout");
  if (res.start_outside_disk)
    std::printf("note = start radius exceeds r0; run flagged\n");
  return 0;
}

int cmd_bounds(const Options& o, const CLI::App* cmd) {
  double r_start = o.r;
  if (cmd->get_option("--r")->count() == 0) r_start = o.r0;
  const auto b = sail::compute_bounds({o.sigma, o.v, o.c, o.eta}, o.alpha,
                                      o.r0, r_start);
  json doc = sail::to_json(b);
  doc["r_start"] = r_start;
  std::cout << doc.dump(2) << "\n";
  return 0;
}

int cmd_montecarlo(const Options& o, long n, int workers,
                   const std::string& out_path) {
  sail::SimConfig cfg = make_config(o);
  const sail::PolarState start{o.r, o.theta};
  const sail::Tack tack = parse_tack(o.tack);
  const double dt = sail::effective_dt(cfg, start.r);
  const auto results = sail::run_batch(cfg, start, tack, n, workers);

  std::vector<double> payoffs, taus, tacks;
  long timeouts = 0;
  for (const auto& r : results) {
    if (r.terminated == sail::Terminated::Hit) {
      payoffs.push_back(r.payoff);
      taus.push_back(r.tau);
      tacks.push_back(static_cast<double>(r.tacks));
    } else {
      ++timeouts;
    }
  }
  if (payoffs.empty()) throw std::runtime_error("every path timed out");
  const auto est = sail::summarize(payoffs, timeouts);
  const auto est_tau = sail::summarize(taus, timeouts);
  const auto est_m = sail::summarize(tacks, timeouts);

  std::vector<sail::CheckResult> checks;
  const double timeout_frac =
      static_cast<double>(timeouts) / static_cast<double>(n);
  checks.push_back({"timeout_fraction_below_0.1pct", timeout_frac < 1e-3,
                    "fraction = " + std::to_string(timeout_frac)});

  json doc;
  doc["params"] = {{"sigma", o.sigma}, {"v", o.v}, {"c", o.c}, {"eta", o.eta}};
  doc["strategy"] = o.strategy;
  doc["estimate"] = sail::to_json(est);
  doc["estimate_tau"] = sail::to_json(est_tau);
  doc["estimate_tacks"] = sail::to_json(est_m);

  if (cfg.strategy.id == sail::StrategyId::ImpulseA) {
    const double r_start = std::min(o.r, o.r0);
    const auto b = sail::compute_bounds(cfg.model, o.alpha, o.r0, r_start);
    doc["bounds"] = sail::to_json(b);
    checks.push_back({"expected_tau_within_bound",
                      est_tau.mean <= b.E_tau_bound + 3.0 * est_tau.stderr_,
                      "mean tau = " + std::to_string(est_tau.mean) +
                          ", bound = " + std::to_string(b.E_tau_bound)});
    checks.push_back({"expected_tacks_within_bound",
                      est_m.mean <= b.E_M_bound + 3.0 * est_m.stderr_,
                      "mean M = " + std::to_string(est_m.mean) +
                          ", bound = " + std::to_string(b.E_M_bound)});
    bool tail_ok = true;
    json tail = json::array();
    for (int i = 0; i <= 10; ++i) {
      long count = 0;
      for (const auto& r : results)
        if (r.tacks >= i) ++count;
      const double p_hat = static_cast<double>(count) / static_cast<double>(n);
      const double se = std::sqrt(
          std::max(0.0, p_hat * (1.0 - p_hat) / static_cast<double>(n)));
      const double bound = std::pow(1.0 - b.p0, std::floor(i / 2.0));
      if (i >= 2 && p_hat > bound + 3.0 * se) tail_ok = false;
      tail.push_back({{"i", i}, {"p_hat", p_hat}, {"stderr", se}, {"bound", bound}});
    }
    doc["tack_tail"] = tail;
    checks.push_back({"tack_tail_geometric", tail_ok, "i = 2..10"});

    long e1_count = 0;
    bool calm_ok = true;
    const double gamma_start =
        (1.0 / std::cos(o.alpha) + 1.0) * (o.r - o.eta) / o.v +
        (b.d1 + b.d2) * o.r / o.v;
    for (const auto& r : results) {
      if (r.terminated != sail::Terminated::Hit || !r.e1) continue;
      ++e1_count;
      if (!(r.tau < gamma_start + 2.0 * dt) || r.tacks > 1 ||
          !(r.max_radius <= r.start_r + o.v * dt))
        calm_ok = false;
    }
    checks.push_back({"calm_paths_within_gamma",
                      calm_ok,
                      "E1 fired on " + std::to_string(e1_count) + " paths"});
  } else {
    const double as_bound =
        std::numbers::sqrt2 * (o.r - o.eta) / o.v + 2.0 * dt;
    bool as_ok = true, dr_ok = true;
    for (const auto& r : results) {
      if (r.terminated != sail::Terminated::Hit || r.tau > as_bound)
        as_ok = false;
      const double eps = 1e-9 * o.v * dt;
      if (r.min_step_dr < -o.v * dt - eps ||
          r.max_step_dr > -o.v / std::numbers::sqrt2 * dt + eps)
        dr_ok = false;
    }
    checks.push_back({"astar_pathwise_bound", as_ok,
                      "tau <= sqrt(2)(r-eta)/v + 2dt on every path"});
    checks.push_back({"astar_step_dr_range", dr_ok,
                      "dr per step in [-v dt, -(v/sqrt(2)) dt]"});
  }

  doc["checks"] = sail::to_json(checks);

  json rc = resolved_config_json(o);
  rc["n"] = n;
  doc["resolved_config"] = rc;

  emit(doc, out_path);
  const bool all_pass =
      std::all_of(checks.begin(), checks.end(),
                  [](const sail::CheckResult& c) { return c.pass; });
  return all_pass ? 0 : 1;
}

int cmd_scenario(const Options& o, const std::string& kind, int cycles,
                 double beta, double alpha0, double r1, double margin,
                 double start_r, bool no_shifts, const std::string& out_csv) {
  const sail::ModelParams m{o.sigma, o.v, o.c, o.eta};
  sail::ScenarioReport rep;
  if (kind == "appendix") {
    sail::AdversarialParams adv = sail::default_adversarial(o.r0, o.alpha);
    if (beta >= 0.0) adv.beta = beta;
    if (alpha0 > 0.0) adv.alpha0 = alpha0;
    if (r1 > 0.0) adv.r1 = r1;
    if (no_shifts) adv.beta = 0.0;
    rep = sail::run_appendix_scenario(m, adv, cycles, o.dt);
  } else if (kind == "ninety-degree") {
    if (start_r <= 0.0) start_r = 0.5 * o.r0;
    rep = sail::run_ninety_degree_loop(m, margin, cycles, start_r, o.r0, o.dt,
                                       !no_shifts);
  } else {
    throw CLI::ValidationError("--kind", "must be appendix or ninety-degree");
  }
  if (!out_csv.empty())
    sail::write_trajectory_csv_file(out_csv, rep.trajectory, false);
  json doc;
  doc["kind"] = kind;
  doc["tacks"] = rep.tacks;
  doc["cycles_completed"] = rep.cycles_completed;
  doc["shifts"] = rep.shifts;
  doc["target_hit"] = rep.target_hit;
  if (rep.target_hit) doc["tau"] = rep.tau;
  doc["min_radius"] = rep.min_radius;
  doc["max_radius"] = rep.max_radius;
  doc["alpha1"] = rep.alpha1;
  doc["gamma_last"] = rep.gamma_last;
  std::cout << doc.dump(2) << "\n";
  return 0;
}

int cmd_convergence(const Options& o, const std::string& dts_csv, int n,
                    const std::string& regime_name, double T, double fine_dt) {
  std::vector<double> dts;
  std::stringstream ss(dts_csv);
  std::string item;
  while (std::getline(ss, item, ',')) dts.push_back(std::stod(item));
  const auto regime = regime_name == "radial"
                          ? sail::ConvergenceRegime::Radial
                          : sail::ConvergenceRegime::ConstantVelocity;
  const auto table = sail::convergence_study({o.sigma, o.v, o.c, o.eta}, dts,
                                             n, regime, o.seed, T, fine_dt);
  json doc;
  json rows = json::array();
  for (const auto& row : table.rows)
    rows.push_back({{"dt", row.dt}, {"rms_error", row.rms_error}});
  doc["rows"] = rows;
  doc["slope"] = table.slope;
  doc["regime"] = regime_name;
  doc["regime_exits"] = table.regime_exits;
  std::cout << doc.dump(2) << "\n";
  return 0;
}

int cmd_plot(const std::string& in_csv, const std::string& frame_name,
             const std::string& out_svg, double eta) {
  const auto records = sail::read_trajectory_csv_file(in_csv);
  const auto frame = frame_name == "geographic" ? sail::Frame::Geographic
                                                : sail::Frame::Rotating;
  sail::write_trajectory_svg_file(out_svg, records, frame, eta);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stochastic sailing-model simulator"};
  app.require_subcommand(1);

  Options o;
  std::string config_path;

  auto* sim = app.add_subcommand("simulate", "run one trajectory");
  add_model_flags(sim, o);
  sim->add_option("--config", config_path, "JSON config file (flags win)");
  std::string sim_out;
  bool sim_geo = false;
  sim->add_option("--out", sim_out, "trajectory CSV path");
  sim->add_flag("--geographic", sim_geo, "add xi1,xi2 columns");

  auto* mc = app.add_subcommand("montecarlo", "estimate payoff over n paths");
  add_model_flags(mc, o);
  mc->add_option("--config", config_path, "JSON config file (flags win)");
  long mc_n = 1000;
  int mc_workers = 1;
  std::string mc_out;
  mc->add_option("--n", mc_n, "number of paths");
  mc->add_option("--workers", mc_workers, "worker threads (output-invariant)");
  mc->add_option("--out", mc_out, "results JSON path (default stdout)");

  auto* bd = app.add_subcommand("bounds", "print the analytic bounds report");
  add_model_flags(bd, o);
  bd->add_option("--config", config_path, "JSON config file (flags win)");

  auto* sc = app.add_subcommand("scenario", "adversarial wind scenarios");
  add_model_flags(sc, o);
  std::string sc_kind = "appendix", sc_out;
  int sc_cycles = 10;
  double sc_beta = -1.0, sc_alpha0 = -1.0, sc_r1 = -1.0;
  double sc_margin = sail::kPi / 8.0, sc_start_r = 0.0;
  bool sc_noshifts = false;
  sc->add_option("--kind", sc_kind, "appendix | ninety-degree");
  sc->add_option("--cycles", sc_cycles, "cycles (one tack each)");
  sc->add_option("--beta", sc_beta, "appendix: per-shift wind turn");
  sc->add_option("--alpha0", sc_alpha0, "appendix: start angle");
  sc->add_option("--r1", sc_r1, "appendix: inner trigger radius");
  sc->add_option("--margin", sc_margin, "ninety-degree: overshoot margin");
  sc->add_option("--start-r", sc_start_r, "ninety-degree: start radius");
  sc->add_flag("--no-shifts", sc_noshifts, "disable the wind shifts");
  sc->add_option("--out", sc_out, "trajectory CSV path");

  auto* cv = app.add_subcommand("convergence", "strong-error study vs closed forms");
  add_model_flags(cv, o);
  std::string cv_dts = "1e-2,1e-3,1e-4", cv_regime = "velocity";
  int cv_n = 100;
  double cv_T = 1.0, cv_fine = 0.0;
  cv->add_option("--dts", cv_dts, "comma-separated step sizes");
  cv->add_option("--n", cv_n, "paths");
  cv->add_option("--regime", cv_regime, "velocity | radial");
  cv->add_option("--T", cv_T, "end time");
  cv->add_option("--fine-dt", cv_fine, "reference grid step");

  auto* pl = app.add_subcommand("plot", "trajectory CSV -> SVG");
  std::string pl_in, pl_frame = "rotating", pl_out = "plot.svg";
  double pl_eta = 0.0;
  pl->add_option("--in", pl_in, "trajectory CSV")->required();
  pl->add_option("--frame", pl_frame, "rotating | geographic");
  pl->add_option("--out", pl_out, "SVG path");
  pl->add_option("--eta", pl_eta, "target radius to draw");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (sim->parsed()) {
      apply_config_file(sim, o, config_path);
      return cmd_simulate(o, sim_out, sim_geo);
    }
    if (mc->parsed()) {
      apply_config_file(mc, o, config_path);
      return cmd_montecarlo(o, mc_n, mc_workers, mc_out);
    }
    if (bd->parsed()) {
      apply_config_file(bd, o, config_path);
      return cmd_bounds(o, bd);
    }
    if (sc->parsed())
      return cmd_scenario(o, sc_kind, sc_cycles, sc_beta, sc_alpha0, sc_r1,
                          sc_margin, sc_start_r, sc_noshifts, sc_out);
    if (cv->parsed())
      return cmd_convergence(o, cv_dts, cv_n, cv_regime, cv_T, cv_fine);
    if (pl->parsed()) return cmd_plot(pl_in, pl_frame, pl_out, pl_eta);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
