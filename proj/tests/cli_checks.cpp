// End-to-end checks of the command-line surface: exit codes, config-file
// precedence, CSV -> SVG round trip, scripted wind loading.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

int g_failures = 0;

void check(bool ok, const std::string& what) {
  std::printf("[%s] %s\n", ok ? "ok" : "FAIL", what.c_str());
  if (!ok) ++g_failures;
}

std::string slurp(const std::string& path) {
  std::ifstream is(path);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

int run_cmd(const std::string& args, const std::string& redirect = "") {
  const std::string cli = SAILSIM_CLI_PATH;
  std::string cmd = "\"" + cli + "\" " + args;
  if (!redirect.empty()) cmd += " > " + redirect + " 2>&1";
  const int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

}  // namespace

int main() {
  // Usage errors exit with 2.
  check(run_cmd("simulate --no-such-flag 1", "cli_err.txt") == 2,
        "unknown flag exits 2");
  check(run_cmd("bounds --sigma 1 --v 1 --eta 0.1 --alpha 2.0 --r0 1",
                "cli_err.txt") == 2,
        "domain violation (alpha > pi/8) exits 2");

  // Bounds report on stdout.
  check(run_cmd("bounds --sigma 1 --v 1 --eta 0.1 --c 0.5 "
                "--alpha 0.3926990817 --r0 2",
                "cli_bounds.json") == 0,
        "bounds command runs");
  const std::string bounds = slurp("cli_bounds.json");
  check(bounds.find("\"K\"") != std::string::npos &&
            bounds.find("\"p0\"") != std::string::npos,
        "bounds JSON carries the schema");

  // simulate: constant wind from the diagonal reaches the target in
  // sqrt(2) time units; trajectory lands in a CSV the plotter accepts.
  check(run_cmd("simulate --strategy a-star --r 2 --theta 0.7853981634 "
                "--sigma 0 --v 1 --eta 1 --dt 1e-4 --out cli_traj.csv",
                "cli_sim.txt") == 0,
        "simulate command runs");
  const std::string sim = slurp("cli_sim.txt");
  check(sim.find("tau = 1.414") != std::string::npos,
        "printed tau is close to sqrt(2): " + sim.substr(0, sim.find('\n')));
  check(run_cmd("plot --in cli_traj.csv --frame rotating --eta 1 "
                "--out cli_plot.svg") == 0,
        "plot command runs");
  const std::string svg = slurp("cli_plot.svg");
  check(svg.find("<svg") != std::string::npos &&
            svg.find("<polyline") != std::string::npos,
        "SVG has the path polyline");
  check(run_cmd("plot --in cli_plot.svg --out x.svg", "cli_err.txt") != 0,
        "malformed CSV is rejected");

  // plot reads but never rewrites the CSV.
  const std::string before = slurp("cli_traj.csv");
  (void)run_cmd("plot --in cli_traj.csv --frame geographic --eta 1 "
                "--out cli_plot2.svg");
  check(before == slurp("cli_traj.csv"), "plot leaves the CSV untouched");

  // Config file fills unset flags; explicit flags win.
  {
    std::ofstream cf("cli_conf.json");
    cf << R"({"sigma": 0.0, "v": 1.0, "eta": 1.0, "r": 2.0,
              "theta": 0.7853981634, "strategy": "a-star", "dt": 1e-3})";
  }
  check(run_cmd("simulate --config cli_conf.json", "cli_conf_out.txt") == 0,
        "config-file-driven simulate runs");
  const std::string conf_out = slurp("cli_conf_out.txt");
  check(conf_out.find("tau = 1.41") != std::string::npos,
        "config file values are applied");
  check(run_cmd("simulate --config cli_conf.json --r 3", "cli_conf2.txt") == 0,
        "flag override runs");
  const std::string conf2 = slurp("cli_conf2.txt");
  check(conf2.find("tau = 2.82") != std::string::npos,
        "explicit flag overrides the config file");

  // Scripted wind from a JSON document.
  {
    std::ofstream wf("cli_wind.json");
    wf << R"([{"t": 0.0, "angle_rad": 0.0}, {"t": 0.2, "angle_rad": 0.1}])";
  }
  check(run_cmd("simulate --strategy a-star --r 2 --theta 0.7853981634 "
                "--sigma 0 --v 1 --eta 1 --dt 1e-3 "
                "--wind-schedule cli_wind.json",
                "cli_wind_out.txt") == 0,
        "scripted wind simulate runs");

  // montecarlo health checks pass on the standard configuration.
  check(run_cmd("montecarlo --strategy impulse-a --sigma 1 --v 1 --eta 0.1 "
                "--c 0.5 --alpha 0.3926990817 --r0 1 --r 1 "
                "--theta 1.5707963267948966 --n 500 --workers 2 "
                "--out cli_mc.json") == 0,
        "montecarlo exits 0 when checks pass");
  const std::string mc = slurp("cli_mc.json");
  check(mc.find("\"checks\"") != std::string::npos &&
            mc.find("\"resolved_config\"") != std::string::npos &&
            mc.find("\"estimate\"") != std::string::npos,
        "montecarlo JSON carries estimate, checks, resolved_config");

  // scenario subcommand emits the wind_shift-tagged CSV.
  check(run_cmd("scenario --kind appendix --cycles 2 --sigma 1 --v 1 "
                "--eta 0.1 --r0 1 --alpha 0.3926990817 --out cli_scen.csv",
                "cli_scen.json") == 0,
        "appendix scenario runs");
  const std::string scen = slurp("cli_scen.csv");
  check(scen.find("wind_shift") != std::string::npos,
        "scenario CSV tags the wind shifts");

  if (g_failures == 0) {
    std::printf("all cli checks passed\n");
    return 0;
  }
  std::printf("%d cli checks failed\n", g_failures);
  return 1;
}
