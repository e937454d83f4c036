#include "crackdiff/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "crackdiff/analysis.hpp"
#include "crackdiff/direct_solver.hpp"
#include "crackdiff/fixed_point.hpp"
#include "crackdiff/io.hpp"
#include "crackdiff/svg_plot.hpp"
#include "crackdiff/weak_solver.hpp"

namespace crackdiff {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct ModeName {
  RunMode mode;
  const char* name;
};

const ModeName kModes[] = {
    {RunMode::Direct, "direct"},
    {RunMode::FixedPoint, "fixed_point"},
    {RunMode::Weak, "weak"},
    {RunMode::Approx, "approx"},
    {RunMode::ProfileVariant, "profile_variant"},
    {RunMode::Compare, "compare"},
    {RunMode::Sweep, "sweep"},
};

[[noreturn]] void bad_key(const std::string& origin, const std::string& key,
                          const std::string& what) {
  fail(ErrorCode::ConfigError, origin + ": key \"" + key + "\" " + what);
}

double as_number(const json& v, const std::string& origin, const std::string& key) {
  if (!v.is_number()) bad_key(origin, key, "must be a number");
  return v.get<double>();
}

int as_int(const json& v, const std::string& origin, const std::string& key) {
  if (!v.is_number_integer()) bad_key(origin, key, "must be an integer");
  return v.get<int>();
}

std::vector<double> as_number_list(const json& v, const std::string& origin,
                                   const std::string& key) {
  if (!v.is_array()) bad_key(origin, key, "must be an array of numbers");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) bad_key(origin, key, "must be an array of numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

}  // namespace

RunMode parse_run_mode(const std::string& name) {
  for (const auto& m : kModes)
    if (name == m.name) return m.mode;
  fail(ErrorCode::ConfigError,
       "mode \"" + name + "\" is not one of direct|fixed_point|weak|approx|profile_variant|compare|sweep");
}

const char* run_mode_name(RunMode m) {
  for (const auto& e : kModes)
    if (e.mode == m) return e.name;
  return "?";
}

ExperimentConfig parse_config_text(const std::string& text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::ConfigError, origin + ": unparseable JSON (" + e.what() + ")");
  }
  if (!doc.is_object()) fail(ErrorCode::ConfigError, origin + ": top level must be an object");

  ExperimentConfig cfg;
  for (const auto& [key, value] : doc.items()) {
    if (key == "mode") {
      if (!value.is_string()) bad_key(origin, key, "must be a string");
      cfg.mode = parse_run_mode(value.get<std::string>());
    } else if (key == "alpha") {
      cfg.params.alpha = as_number(value, origin, key);
    } else if (key == "beta") {
      cfg.params.beta = as_number(value, origin, key);
    } else if (key == "epsilon") {
      cfg.params.epsilon = as_number(value, origin, key);
    } else if (key == "epsilons") {
      cfg.epsilons = as_number_list(value, origin, key);
    } else if (key == "wall_flux_mode") {
      if (!value.is_string()) bad_key(origin, key, "must be a string");
      const std::string s = value.get<std::string>();
      if (s == "constant")
        cfg.params.wall_flux_mode = WallFluxMode::Constant;
      else if (s == "profile")
        cfg.params.wall_flux_mode = WallFluxMode::Profile;
      else
        bad_key(origin, key, "must be \"constant\" or \"profile\"");
    } else if (key == "profile_id") {
      if (!value.is_string()) bad_key(origin, key, "must be a string");
      cfg.params.profile_id = value.get<std::string>();
    } else if (key == "profile_table") {
      if (!value.is_array()) bad_key(origin, key, "must be an array of [x, f] pairs");
      cfg.params.profile_table.clear();
      for (const auto& e : value) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
          bad_key(origin, key, "must be an array of [x, f] pairs");
        cfg.params.profile_table.emplace_back(e[0].get<double>(), e[1].get<double>());
      }
    } else if (key == "nx") {
      cfg.nx = as_int(value, origin, key);
    } else if (key == "ny") {
      cfg.ny = as_int(value, origin, key);
    } else if (key == "n_1d") {
      cfg.n_1d = as_int(value, origin, key);
    } else if (key == "dt") {
      cfg.dt = as_number(value, origin, key);
    } else if (key == "t_end") {
      cfg.t_end = as_number(value, origin, key);
    } else if (key == "tol") {
      cfg.tol = as_number(value, origin, key);
    } else if (key == "delta") {
      cfg.delta = as_number(value, origin, key);
    } else if (key == "accelerate") {
      if (!value.is_boolean()) bad_key(origin, key, "must be a boolean");
      cfg.accelerate = value.get<bool>();
    } else if (key == "out_dir") {
      if (!value.is_string()) bad_key(origin, key, "must be a string");
      cfg.out_dir = value.get<std::string>();
    } else if (key == "snapshot_times") {
      cfg.snapshot_times = as_number_list(value, origin, key);
    } else if (key == "probe_x") {
      cfg.probe_x = as_number_list(value, origin, key);
    } else {
      bad_key(origin, key, "is not a recognized config key");
    }
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::ConfigError, "cannot open config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

void apply_overrides(ExperimentConfig& cfg, const ConfigOverrides& ov) {
  if (ov.mode) cfg.mode = parse_run_mode(*ov.mode);
  if (ov.alpha) cfg.params.alpha = *ov.alpha;
  if (ov.beta) cfg.params.beta = *ov.beta;
  if (ov.epsilon) cfg.params.epsilon = *ov.epsilon;
  if (ov.epsilons) cfg.epsilons = *ov.epsilons;
  if (ov.nx) cfg.nx = *ov.nx;
  if (ov.ny) cfg.ny = *ov.ny;
  if (ov.n_1d) cfg.n_1d = *ov.n_1d;
  if (ov.dt) cfg.dt = *ov.dt;
  if (ov.t_end) cfg.t_end = *ov.t_end;
  if (ov.tol) cfg.tol = *ov.tol;
  if (ov.delta) cfg.delta = *ov.delta;
  if (ov.accelerate) cfg.accelerate = *ov.accelerate;
  if (ov.out_dir) cfg.out_dir = *ov.out_dir;
}

void normalize_config(ExperimentConfig& cfg) {
  if (cfg.nx < 2) fail(ErrorCode::ConfigError, "nx must be at least 2");
  if (cfg.ny < 0) fail(ErrorCode::ConfigError, "ny must be 0 (auto) or positive");
  if (cfg.n_1d < 1) fail(ErrorCode::ConfigError, "n_1d must be positive");
  if (!(cfg.dt > 0.0)) fail(ErrorCode::ConfigError, "dt must be positive");
  if (!(cfg.t_end >= cfg.dt)) fail(ErrorCode::ConfigError, "t_end must be at least dt");
  if (!(cfg.tol > 0.0)) fail(ErrorCode::ConfigError, "tol must be positive");
  if (cfg.delta < 0.0) fail(ErrorCode::ConfigError, "delta must be nonnegative");
  if (cfg.out_dir.empty()) fail(ErrorCode::ConfigError, "out_dir must be set");

  if (cfg.mode == RunMode::Sweep) {
    if (cfg.epsilons.empty())
      fail(ErrorCode::ConfigError, "epsilons: sweep mode needs a strictly decreasing list");
    for (std::size_t i = 0; i < cfg.epsilons.size(); ++i) {
      if (!(cfg.epsilons[i] > 0.0 && cfg.epsilons[i] <= 1.0))
        fail(ErrorCode::ConfigError, "epsilons entries must lie in (0, 1]");
      if (i > 0 && !(cfg.epsilons[i] < cfg.epsilons[i - 1]))
        fail(ErrorCode::ConfigError, "epsilons must be strictly decreasing");
    }
    cfg.params.epsilon = cfg.epsilons.front();
  } else if (!cfg.epsilons.empty()) {
    fail(ErrorCode::ConfigError, "epsilons is only valid in sweep mode");
  }

  if (cfg.mode == RunMode::ProfileVariant && cfg.params.wall_flux_mode == WallFluxMode::Constant)
    cfg.params.wall_flux_mode = WallFluxMode::Profile;
  if (cfg.mode == RunMode::Compare && cfg.params.wall_flux_mode != WallFluxMode::Constant)
    fail(ErrorCode::ConfigError, "wall_flux_mode: compare runs the constant-flux models");

  validate_params(cfg.params);
  if (cfg.snapshot_times.empty()) cfg.snapshot_times = {cfg.t_end};
}

std::string config_json_text(const ExperimentConfig& cfg) {
  json j;
  j["mode"] = run_mode_name(cfg.mode);
  j["alpha"] = cfg.params.alpha;
  j["beta"] = cfg.params.beta;
  if (cfg.mode == RunMode::Sweep)
    j["epsilons"] = cfg.epsilons;
  else
    j["epsilon"] = cfg.params.epsilon;
  j["wall_flux_mode"] =
      cfg.params.wall_flux_mode == WallFluxMode::Constant ? "constant" : "profile";
  if (cfg.params.wall_flux_mode == WallFluxMode::Profile) j["profile_id"] = cfg.params.profile_id;
  j["nx"] = cfg.nx;
  j["ny"] = cfg.ny;
  j["n_1d"] = cfg.n_1d;
  j["dt"] = cfg.dt;
  j["t_end"] = cfg.t_end;
  j["tol"] = cfg.tol;
  j["delta"] = cfg.delta;
  j["accelerate"] = cfg.accelerate;
  j["out_dir"] = cfg.out_dir;
  j["snapshot_times"] = cfg.snapshot_times;
  j["probe_x"] = cfg.probe_x;
  return j.dump(2) + "\n";
}

namespace {

Trajectory run_one_solver(const ExperimentConfig& cfg, RunMode mode) {
  switch (mode) {
    case RunMode::Direct: {
      DirectRunConfig d;
      d.params = cfg.params;
      d.nx = cfg.nx;
      d.ny = cfg.ny;
      d.dt = cfg.dt;
      d.t_end = cfg.t_end;
      d.snapshot_times = cfg.snapshot_times;
      d.probe_x = cfg.probe_x;
      return run_direct(d);
    }
    case RunMode::FixedPoint: {
      FixedPointConfig f;
      f.params = cfg.params;
      f.n_per_side = cfg.n_1d;
      f.dt = cfg.dt;
      f.t_end = cfg.t_end;
      f.options.tol = cfg.tol;
      f.options.accelerate = cfg.accelerate;
      f.snapshot_times = cfg.snapshot_times;
      f.probe_x = cfg.probe_x;
      return run_fixed_point(f);
    }
    default: {
      WeakRunConfig w;
      w.params = cfg.params;
      w.n = 2 * cfg.n_1d;
      w.dt = cfg.dt;
      w.t_end = cfg.t_end;
      w.delta = cfg.delta;
      w.snapshot_times = cfg.snapshot_times;
      w.probe_x = cfg.probe_x;
      if (mode == RunMode::Weak) return run_weak(w);
      if (mode == RunMode::Approx) return run_approx(w);
      return run_profile_variant(w);
    }
  }
}

void write_summary_with_config(const std::string& dir, const Trajectory& traj,
                               const ExperimentConfig& cfg) {
  json obj = json::parse(io::summary_json_text(traj));
  obj["config"] = json::parse(config_json_text(cfg));
  io::write_text(dir + "/run_summary.json", obj.dump(2) + "\n");
}

double max_abs_jump_u(const Trajectory& traj) {
  double m = 0.0;
  for (const auto& r : transmission_residuals(traj)) m = std::max(m, std::abs(r.jump_u));
  return m;
}

double max_abs_jump_flux(const Trajectory& traj) {
  double m = 0.0;
  for (const auto& r : transmission_residuals(traj)) m = std::max(m, std::abs(r.jump_flux));
  return m;
}

void run_compare(const ExperimentConfig& cfg) {
  Trajectory td = run_one_solver(cfg, RunMode::Direct);
  Trajectory tf = run_one_solver(cfg, RunMode::FixedPoint);
  Trajectory tw = run_one_solver(cfg, RunMode::Weak);

  io::save_trajectory(cfg.out_dir + "/direct", td);
  io::save_trajectory(cfg.out_dir + "/fixed_point", tf);
  io::save_trajectory(cfg.out_dir + "/weak", tw);

  const double t1 = td.snapshots.back().t;
  const Snapshot& fsnap = tf.snapshot_at(t1);
  const Snapshot& wsnap = tw.snapshot_at(t1);

  // overlay profile sampled at the coupled solver's cell centers; the
  // resolved field enters through its zero-extension y-average
  std::vector<double> dxs(td.grid->nx());
  for (int i = 0; i < td.grid->nx(); ++i) dxs[i] = td.grid->cell_x(i);
  const std::vector<double> davg = y_average(*td.grid, td.snapshot_at(t1).values);
  io::Csv prof;
  prof.columns = {"x", "direct", "fixed_point", "weak"};
  for (std::size_t k = 0; k < tf.xs.size(); ++k) {
    const double x = tf.xs[k];
    prof.rows.push_back({x, interp_linear(dxs, davg, x), fsnap.values[k],
                         interp_linear(tw.xs, wsnap.values, x)});
  }
  io::write_csv(cfg.out_dir + "/overlay_profile.csv", prof);

  if (!cfg.probe_x.empty()) {
    io::Csv pr;
    pr.columns = {"t", "direct", "fixed_point", "weak"};
    const std::size_t n =
        std::min({td.probe_t.size(), tf.probe_t.size(), tw.probe_t.size()});
    for (std::size_t i = 0; i < n; ++i)
      pr.rows.push_back({td.probe_t[i], td.probe[0][i], tf.probe[0][i], tw.probe[0][i]});
    io::write_csv(cfg.out_dir + "/overlay_probe.csv", pr);
  }

  const EpsilonError e_fp = epsilon_error(td, tf, t1);
  const EpsilonError e_w = epsilon_error(td, tw, t1);
  json obj;
  obj["config"] = json::parse(config_json_text(cfg));
  obj["t1"] = t1;
  obj["metrics"] = {
      {"err_direct_vs_fixed_point", e_fp.err},
      {"err_direct_vs_weak", e_w.err},
      {"weak_vs_fixed_point_distance", homog_profile_distance(tf, tw, t1, 0.1)},
      {"max_jump_u_fixed_point", max_abs_jump_u(tf)},
      {"max_jump_u_weak", max_abs_jump_u(tw)},
      {"max_jump_flux_fixed_point", max_abs_jump_flux(tf)},
      {"max_jump_flux_weak", max_abs_jump_flux(tw)},
  };
  io::write_text(cfg.out_dir + "/run_summary.json", obj.dump(2) + "\n");
}

void run_sweep(const ExperimentConfig& cfg) {
  SweepConfig s;
  s.base = cfg.params;
  s.epsilons = cfg.epsilons;
  s.nx = cfg.nx;
  s.dt = cfg.dt;
  s.t1 = cfg.t_end;
  s.n_1d = cfg.n_1d;
  s.fp_options.tol = cfg.tol;
  s.fp_options.accelerate = cfg.accelerate;
  const SweepResult r = sweep_epsilon(s);
  io::save_error_table(cfg.out_dir, r.table, r.fit);
  json obj;
  obj["config"] = json::parse(config_json_text(cfg));
  obj["fit"] = {{"slope", r.fit.slope},
                {"intercept", r.fit.intercept},
                {"regime", r.fit.regime_eps}};
  io::write_text(cfg.out_dir + "/run_summary.json", obj.dump(2) + "\n");
}

void plot_xy_csv(const std::string& csv_path, const std::string& svg_path,
                 const std::string& title, const std::string& xlabel, const std::string& ylabel) {
  const io::Csv csv = io::read_csv(csv_path);
  svg::PlotSpec spec;
  spec.title = title;
  spec.xlabel = xlabel;
  spec.ylabel = ylabel;
  for (std::size_t c = 1; c < csv.columns.size(); ++c) {
    svg::Series s;
    s.label = csv.columns[c];
    for (const auto& row : csv.rows) {
      s.x.push_back(row[0]);
      s.y.push_back(row[c]);
    }
    spec.series.push_back(std::move(s));
  }
  svg::write_line_svg(svg_path, spec);
}

void plot_sweep(const std::string& dir) {
  const io::Csv csv = io::read_csv(dir + "/err_table.csv");
  int c_eps = -1, c_err = -1;
  for (std::size_t c = 0; c < csv.columns.size(); ++c) {
    if (csv.columns[c] == "epsilon") c_eps = int(c);
    if (csv.columns[c] == "err") c_err = int(c);
  }
  if (c_eps < 0 || c_err < 0)
    fail(ErrorCode::MissingArtifact, dir + "/err_table.csv lacks epsilon/err columns");

  svg::Series err;
  err.label = "err";
  for (auto it = csv.rows.rbegin(); it != csv.rows.rend(); ++it) {
    err.x.push_back((*it)[c_eps]);
    err.y.push_back((*it)[c_err]);
  }
  svg::PlotSpec spec;
  spec.title = "homogenization error vs period";
  spec.xlabel = "epsilon";
  spec.ylabel = "relative L2 error";
  spec.series.push_back(err);

  const std::string fit_path = dir + "/fit.json";
  if (fs::exists(fit_path)) {
    std::ifstream in(fit_path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
      const json fj = json::parse(buf.str());
      const double a = fj.at("slope").get<double>(), b = fj.at("intercept").get<double>();
      svg::Series fit;
      fit.label = "fit";
      for (double e : {err.x.front(), err.x.back()}) {
        fit.x.push_back(e);
        fit.y.push_back(a * e + b);
      }
      spec.series.push_back(fit);
    } catch (const json::exception&) {
      // table alone still plots
    }
  }
  svg::write_line_svg(dir + "/err_vs_eps.svg", spec);
}

}  // namespace

double homog_profile_distance(const Trajectory& ref, const Trajectory& other, double t1,
                              double cut) {
  const Snapshot& rs = ref.snapshot_at(t1);
  const Snapshot& os = other.snapshot_at(t1);
  if (ref.xs.size() != rs.values.size() || other.xs.size() != os.values.size())
    fail(ErrorCode::DomainMismatch, "trajectory lacks 1-D node coordinates");
  // uniform ref spacing cancels in the ratio
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < ref.xs.size(); ++k) {
    const double x = ref.xs[k];
    if (std::abs(x) <= cut) continue;
    const double d = interp_linear(other.xs, os.values, x) - rs.values[k];
    num += d * d;
    den += rs.values[k] * rs.values[k];
  }
  if (den == 0.0) fail(ErrorCode::ZeroDenominator, "reference field vanishes on |x| > cut");
  return std::sqrt(num / den);
}

std::string run_experiment(const ExperimentConfig& cfg_in) {
  ExperimentConfig cfg = cfg_in;
  normalize_config(cfg);
  io::ensure_dir(cfg.out_dir);
  switch (cfg.mode) {
    case RunMode::Compare:
      run_compare(cfg);
      break;
    case RunMode::Sweep:
      run_sweep(cfg);
      break;
    default: {
      const Trajectory traj = run_one_solver(cfg, cfg.mode);
      io::save_trajectory(cfg.out_dir, traj);
      write_summary_with_config(cfg.out_dir, traj, cfg);
      break;
    }
  }
  emit_plots(cfg.out_dir);
  return cfg.out_dir;
}

void emit_plots(const std::string& run_dir) {
  const auto have = [&](const char* f) { return fs::exists(fs::path(run_dir) / f); };
  bool any = false;
  if (have("err_table.csv")) {
    plot_sweep(run_dir);
    any = true;
  }
  if (have("profile.csv")) {
    plot_xy_csv(run_dir + "/profile.csv", run_dir + "/profile.svg", "solution profiles", "x",
                "u");
    any = true;
  }
  if (have("probe.csv")) {
    plot_xy_csv(run_dir + "/probe.csv", run_dir + "/probe.svg", "probe history", "t", "u");
    any = true;
  }
  if (have("overlay_profile.csv")) {
    plot_xy_csv(run_dir + "/overlay_profile.csv", run_dir + "/overlay_profile.svg",
                "solver overlay", "x", "u");
    any = true;
  }
  if (have("overlay_probe.csv")) {
    plot_xy_csv(run_dir + "/overlay_probe.csv", run_dir + "/overlay_probe.svg",
                "probe overlay", "t", "u");
    any = true;
  }
  for (const char* sub : {"direct", "fixed_point", "weak"}) {
    if (fs::exists(fs::path(run_dir) / sub / "profile.csv")) {
      emit_plots((fs::path(run_dir) / sub).string());
      any = true;
    }
  }
  if (!any) fail(ErrorCode::MissingArtifact, "no plottable artifacts under " + run_dir);
}

const std::vector<Preset>& presets() {
  static const std::vector<Preset> table = [] {
    std::vector<Preset> v;

    ExperimentConfig c;
    c.mode = RunMode::Compare;
    c.params.alpha = 0.1;
    c.params.beta = 0.0;
    c.params.epsilon = 0.02;
    c.nx = 400;
    c.n_1d = 400;
    c.dt = 1e-3;
    c.t_end = 0.5;
    c.out_dir = "out/fig3";
    v.push_back({"fig3",
                 "probe history at x = 0.5: resolved crack vs both homogenized runs "
                 "(alpha 0.1, eps 0.02)",
                 c});

    c.out_dir = "out/fig4";
    v.push_back({"fig4", "overlaid solution profiles at t = 0.5 (alpha 0.1, eps 0.02)", c});

    ExperimentConfig c5 = c;
    c5.params.alpha = 0.6;
    c5.out_dir = "out/fig5";
    v.push_back(
        {"fig5", "overlaid solution profiles for a wide crack (alpha 0.6, eps 0.02)", c5});

    ExperimentConfig c6;
    c6.mode = RunMode::Sweep;
    c6.params.alpha = 0.1;
    c6.params.beta = 0.0;
    c6.epsilons = {0.4, 0.2, 0.1, 0.05};
    c6.nx = 400;
    c6.n_1d = 400;
    c6.dt = 2e-3;
    c6.t_end = 0.5;
    c6.out_dir = "out/fig6";
    v.push_back({"fig6", "homogenization error vs crack period with a linear fit (alpha 0.1)",
                 c6});
    return v;
  }();
  return table;
}

ExperimentConfig preset_config(const std::string& name) {
  for (const auto& p : presets())
    if (p.name == name) return p.config;
  fail(ErrorCode::ConfigError, "preset \"" + name + "\" is not defined (see the presets command)");
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::SolverDivergence:
    case ErrorCode::NoConvergence:
    case ErrorCode::NaNDetected:
    case ErrorCode::NotBoundaryFace:
      return 2;
    case ErrorCode::MissingArtifact:
    case ErrorCode::IoError:
      return 3;
    default:
      return 1;
  }
}

}  // namespace crackdiff
