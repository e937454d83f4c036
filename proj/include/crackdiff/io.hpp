#ifndef CRACKDIFF_IO_HPP
#define CRACKDIFF_IO_HPP

#include <string>
#include <vector>

#include "crackdiff/analysis.hpp"
#include "crackdiff/trajectory.hpp"

namespace crackdiff::io {

// Numeric table with named columns; cells are written with %.17g so reruns
// and read-backs are exact.
struct Csv {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

void write_csv(const std::string& path, const Csv& csv);
Csv read_csv(const std::string& path);  // MissingArtifact on absent or empty file

void ensure_dir(const std::string& dir);
std::string write_text(const std::string& path, const std::string& text);  // returns path

// Writes the per-run bundle into dir: mass.csv, probe.csv, profile.csv,
// plus snapshots.csv for resolved-crack runs, interface.csv and
// residuals.csv for homogenized runs, and run_summary.json.
void save_trajectory(const std::string& dir, const Trajectory& traj);

void save_error_table(const std::string& dir, const ErrorTable& table, const FitResult& fit);

std::string summary_json_text(const Trajectory& traj);

}  // namespace crackdiff::io

#endif
