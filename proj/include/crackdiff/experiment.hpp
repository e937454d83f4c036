#ifndef CRACKDIFF_EXPERIMENT_HPP
#define CRACKDIFF_EXPERIMENT_HPP

#include <optional>
#include <string>
#include <vector>

#include "crackdiff/errors.hpp"
#include "crackdiff/params.hpp"
#include "crackdiff/trajectory.hpp"

namespace crackdiff {

enum class RunMode { Direct, FixedPoint, Weak, Approx, ProfileVariant, Compare, Sweep };

RunMode parse_run_mode(const std::string& name);  // ConfigError on unknown name
const char* run_mode_name(RunMode m);

// Full recipe for one run directory. n_1d is the 1-D resolution per unit
// interval: the coupled solver uses that many cells on each side of 0, the
// single-domain solvers twice as many elements on (-1, 1).
struct ExperimentConfig {
  RunMode mode = RunMode::Compare;
  ParamSet params;
  std::vector<double> epsilons;  // sweep mode only; strictly decreasing
  int nx = 400;                  // resolved-crack columns across (-1, 1)
  int ny = 0;                    // 0: smallest aligned row count with hy <= hx
  int n_1d = 400;
  double dt = 1e-3;
  double t_end = 0.5;
  double tol = 1e-10;    // interface fixed-point tolerance
  double delta = 0.0;    // dipole width of the weak solver; 0 picks 2h
  bool accelerate = false;
  std::string out_dir = "out";
  std::vector<double> snapshot_times;  // empty: {t_end}
  std::vector<double> probe_x{0.5};
};

// Parses a JSON config document. Unknown or mistyped keys raise ConfigError
// naming the key. `origin` labels error messages (file name or "<preset>").
ExperimentConfig parse_config_text(const std::string& text, const std::string& origin);
ExperimentConfig load_config(const std::string& path);

// Command-line values; every set field replaces the config value (flag wins).
struct ConfigOverrides {
  std::optional<std::string> mode;
  std::optional<double> alpha, beta, epsilon, dt, t_end, tol, delta;
  std::optional<std::vector<double>> epsilons;
  std::optional<int> nx, ny, n_1d;
  std::optional<bool> accelerate;
  std::optional<std::string> out_dir;
};

void apply_overrides(ExperimentConfig& cfg, const ConfigOverrides& ov);

// Mode-aware sanity pass; raises ConfigError naming the offending key.
// profile_variant switches the wall-flux mode to the linear profile when the
// config left it at the default.
void normalize_config(ExperimentConfig& cfg);

// Resolved-config echo embedded in every run_summary.json.
std::string config_json_text(const ExperimentConfig& cfg);

// Executes the configured experiment, writes the artifact bundle (CSV + JSON
// + SVG) under cfg.out_dir, returns that directory. Single-solver modes write
// one trajectory bundle; compare writes three sub-bundles plus overlay data;
// sweep writes err_table.csv and fit.json.
std::string run_experiment(const ExperimentConfig& cfg);

// Relative L2 distance between two homogenized trajectories at time t1 over
// {|x| > cut}, sampled at the first trajectory's nodes (also the denominator).
double homog_profile_distance(const Trajectory& ref, const Trajectory& other, double t1,
                              double cut);

// Rebuilds the SVG plots of a finished run directory from its CSVs alone;
// descends into compare sub-bundles. MissingArtifact when nothing plottable.
void emit_plots(const std::string& run_dir);

struct Preset {
  std::string name;
  std::string summary;
  ExperimentConfig config;
};

const std::vector<Preset>& presets();
ExperimentConfig preset_config(const std::string& name);  // ConfigError on unknown name

// Process exit code per error class: 1 bad setup, 2 solver failure, 3 I/O.
int exit_code_for(ErrorCode code);

}  // namespace crackdiff

#endif
