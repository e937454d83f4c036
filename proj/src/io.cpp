#include "crackdiff/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "crackdiff/errors.hpp"
#include "json.hpp"

namespace crackdiff::io {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_short(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

void write_csv(const std::string& path, const Csv& csv) {
  std::ostringstream out;
  for (std::size_t c = 0; c < csv.columns.size(); ++c)
    out << (c ? "," : "") << csv.columns[c];
  out << "\n";
  for (const auto& row : csv.rows) {
    if (row.size() != csv.columns.size())
      fail(ErrorCode::IoError, "csv row width does not match the header: " + path);
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << fmt(row[c]);
    out << "\n";
  }
  write_text(path, out.str());
}

Csv read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::MissingArtifact, "cannot open " + path);
  Csv csv;
  std::string line;
  if (!std::getline(in, line) || line.empty())
    fail(ErrorCode::MissingArtifact, "empty csv: " + path);
  std::stringstream header(line);
  std::string cell;
  while (std::getline(header, cell, ',')) csv.columns.push_back(cell);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) {
      // strtod instead of stod: subnormal cells must parse, not raise underflow
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str() || *end != '\0')
        fail(ErrorCode::IoError, "non-numeric cell in " + path + ": " + cell);
      row.push_back(v);
    }
    if (row.size() != csv.columns.size())
      fail(ErrorCode::IoError, "ragged csv row in " + path);
    csv.rows.push_back(std::move(row));
  }
  if (csv.rows.empty()) fail(ErrorCode::MissingArtifact, "csv has no data rows: " + path);
  return csv;
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorCode::IoError, "cannot create directory " + dir + ": " + ec.message());
}

std::string write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::IoError, "cannot open " + path + " for writing");
  out << text;
  out.flush();
  if (!out) fail(ErrorCode::IoError, "short write to " + path);
  return path;
}

namespace {

void save_mass_and_probes(const std::string& dir, const Trajectory& traj) {
  Csv mass{{"t", "M"}, {}};
  for (std::size_t k = 0; k < traj.mass.size(); ++k)
    mass.rows.push_back({traj.mass_t[k], traj.mass[k]});
  write_csv(dir + "/mass.csv", mass);

  Csv probe;
  probe.columns.push_back("t");
  for (double px : traj.probe_x) probe.columns.push_back("u@" + fmt_short(px));
  for (std::size_t k = 0; k < traj.probe_t.size(); ++k) {
    std::vector<double> row{traj.probe_t[k]};
    for (const auto& series : traj.probe) row.push_back(series[k]);
    probe.rows.push_back(std::move(row));
  }
  write_csv(dir + "/probe.csv", probe);
}

void save_direct_fields(const std::string& dir, const Trajectory& traj) {
  const auto& grid = *traj.grid;
  Csv snaps{{"t", "x", "y", "u"}, {}};
  for (const auto& snap : traj.snapshots)
    for (int c = 0; c < grid.active_count(); ++c)
      snaps.rows.push_back({snap.t, grid.cell_x(grid.cell_i(c)), grid.cell_y(grid.cell_j(c)),
                            snap.values[c]});
  write_csv(dir + "/snapshots.csv", snaps);

  Csv prof;
  prof.columns.push_back("x");
  for (const auto& snap : traj.snapshots) prof.columns.push_back("u_yavg@" + fmt_short(snap.t));
  std::vector<std::vector<double>> avgs;
  for (const auto& snap : traj.snapshots) avgs.push_back(y_average(grid, snap.values));
  for (int i = 0; i < grid.nx(); ++i) {
    std::vector<double> row{grid.cell_x(i)};
    for (const auto& avg : avgs) row.push_back(avg[i]);
    prof.rows.push_back(std::move(row));
  }
  write_csv(dir + "/profile.csv", prof);
}

void save_homog_fields(const std::string& dir, const Trajectory& traj) {
  Csv prof;
  prof.columns.push_back("x");
  for (const auto& snap : traj.snapshots) prof.columns.push_back("u@" + fmt_short(snap.t));
  for (std::size_t i = 0; i < traj.xs.size(); ++i) {
    std::vector<double> row{traj.xs[i]};
    for (const auto& snap : traj.snapshots) row.push_back(snap.values[i]);
    prof.rows.push_back(std::move(row));
  }
  write_csv(dir + "/profile.csv", prof);

  Csv iface{{"t", "F", "u0minus", "u0plus", "dxu0minus", "dxu0plus", "iters", "last_ratio"}, {}};
  for (const auto& r : traj.interface_series)
    iface.rows.push_back({r.t, r.F, r.u0_minus, r.u0_plus, r.dxu0_minus, r.dxu0_plus,
                          static_cast<double>(r.iterations), r.last_ratio});
  write_csv(dir + "/interface.csv", iface);

  Csv resid{{"t", "jump_u", "jump_flux"}, {}};
  for (const auto& r : transmission_residuals(traj))
    resid.rows.push_back({r.t, r.jump_u, r.jump_flux});
  write_csv(dir + "/residuals.csv", resid);
}

}  // namespace

std::string summary_json_text(const Trajectory& traj) {
  nlohmann::json j;
  j["model"] = traj.model;
  j["params"]["alpha"] = traj.params.alpha;
  j["params"]["beta"] = traj.params.beta;
  j["params"]["epsilon"] = traj.params.epsilon;
  j["params"]["wall_flux_mode"] =
      traj.params.wall_flux_mode == WallFluxMode::Constant ? "constant" : "profile";
  if (traj.params.wall_flux_mode == WallFluxMode::Profile)
    j["params"]["profile_id"] = traj.params.profile_id;
  j["dt"] = traj.dt;
  j["t_end"] = traj.t_end;
  if (traj.delta > 0.0) j["dirac_delta"] = traj.delta;
  j["expected_mass_rate"] = traj.expected_mass_rate;
  if (traj.grid) {
    j["grid"]["nx"] = traj.grid->nx();
    j["grid"]["ny"] = traj.grid->ny();
    j["grid"]["active_cells"] = traj.grid->active_count();
  } else {
    j["grid"]["dofs"] = traj.xs.size();
  }
  j["probe_x"] = traj.probe_x;
  std::vector<double> times;
  for (const auto& s : traj.snapshots) times.push_back(s.t);
  j["snapshot_times"] = times;
  j["total_solver_iterations"] = traj.total_solver_iterations;
  j["diagnostics"]["energy_rate_deviation"] = energy_audit(traj, traj.expected_mass_rate);
  return j.dump(2) + "\n";
}

void save_trajectory(const std::string& dir, const Trajectory& traj) {
  ensure_dir(dir);
  save_mass_and_probes(dir, traj);
  if (traj.grid)
    save_direct_fields(dir, traj);
  else
    save_homog_fields(dir, traj);
  write_text(dir + "/run_summary.json", summary_json_text(traj));
}

void save_error_table(const std::string& dir, const ErrorTable& table, const FitResult& fit) {
  ensure_dir(dir);
  Csv csv{{"epsilon", "nx", "ny", "err", "err_minus"}, {}};
  for (const auto& r : table.rows)
    csv.rows.push_back({r.epsilon, static_cast<double>(r.nx), static_cast<double>(r.ny), r.err,
                        r.has_err_minus ? r.err_minus : std::nan("")});
  write_csv(dir + "/err_table.csv", csv);

  nlohmann::json j;
  j["alpha"] = table.alpha;
  j["beta"] = table.beta;
  j["t1"] = table.t1;
  j["dt"] = table.dt;
  j["slope"] = fit.slope;
  j["intercept"] = fit.intercept;
  j["regime"] = fit.regime_eps;
  write_text(dir + "/fit.json", j.dump(2) + "\n");
}

}  // namespace crackdiff::io
