#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "crackdiff/experiment.hpp"

using namespace crackdiff;

int main(int argc, char** argv) {
  CLI::App app{"heat diffusion in a periodically cracked strip: resolved-crack and homogenized solvers"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "execute an experiment and write its artifact bundle");
  std::string config_path, preset_name, mode_s, out_dir;
  double alpha = 0, beta = 0, epsilon = 0, dt = 0, t_end = 0, tol = 0, delta = 0;
  std::vector<double> eps_list;
  int nx = 0, ny = 0, n1d = 0;
  bool accel = false;
  auto* o_config = run->add_option("--config", config_path, "JSON config file");
  auto* o_preset =
      run->add_option("--preset", preset_name, "start from a named preset (see: presets)");
  o_config->excludes(o_preset);
  auto* o_mode = run->add_option(
      "--mode", mode_s, "direct|fixed_point|weak|approx|profile_variant|compare|sweep");
  auto* o_alpha = run->add_option("--alpha", alpha, "crack thickness fraction in [0, 1)");
  auto* o_beta = run->add_option("--beta", beta, "crack-bottom flux parameter");
  auto* o_eps = run->add_option("--epsilon", epsilon, "crack period in (0, 1]");
  auto* o_epss = run->add_option("--epsilons", eps_list, "sweep periods, strictly decreasing")
                     ->delimiter(',');
  auto* o_nx = run->add_option("--nx", nx, "resolved-crack columns across (-1, 1)");
  auto* o_ny = run->add_option("--ny", ny, "resolved-crack rows (0: auto)");
  auto* o_n1d = run->add_option("--n1d", n1d, "1-D cells per unit interval");
  auto* o_dt = run->add_option("--dt", dt, "time step");
  auto* o_tend = run->add_option("--t-end", t_end, "final time");
  auto* o_tol = run->add_option("--tol", tol, "interface fixed-point tolerance");
  auto* o_delta = run->add_option("--delta", delta, "dipole width (0: two elements)");
  auto* o_accel = run->add_flag("--accelerate", accel, "extrapolate the interface flux");
  auto* o_out = run->add_option("--out", out_dir, "output directory");

  auto* plot = app.add_subcommand("plot", "regenerate the SVG plots of a run directory");
  std::string plot_dir;
  plot->add_option("dir", plot_dir, "run directory holding the CSV artifacts")->required();

  auto* pre = app.add_subcommand("presets", "list the named experiment presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (pre->parsed()) {
      for (const auto& p : presets())
        std::printf("%-6s %-8s %s\n", p.name.c_str(), run_mode_name(p.config.mode),
                    p.summary.c_str());
      return 0;
    }
    if (plot->parsed()) {
      emit_plots(plot_dir);
      std::printf("plots refreshed under %s\n", plot_dir.c_str());
      return 0;
    }

    ExperimentConfig cfg;
    if (*o_config) cfg = load_config(config_path);
    else if (*o_preset) cfg = preset_config(preset_name);

    ConfigOverrides ov;
    if (*o_mode) ov.mode = mode_s;
    if (*o_alpha) ov.alpha = alpha;
    if (*o_beta) ov.beta = beta;
    if (*o_eps) ov.epsilon = epsilon;
    if (*o_epss) ov.epsilons = eps_list;
    if (*o_nx) ov.nx = nx;
    if (*o_ny) ov.ny = ny;
    if (*o_n1d) ov.n_1d = n1d;
    if (*o_dt) ov.dt = dt;
    if (*o_tend) ov.t_end = t_end;
    if (*o_tol) ov.tol = tol;
    if (*o_delta) ov.delta = delta;
    if (*o_accel) ov.accelerate = accel;
    if (*o_out) ov.out_dir = out_dir;
    apply_overrides(cfg, ov);

    const std::string dir = run_experiment(cfg);
    std::printf("artifacts written to %s\n", dir.c_str());
    return 0;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
