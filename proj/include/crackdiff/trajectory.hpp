#ifndef CRACKDIFF_TRAJECTORY_HPP
#define CRACKDIFF_TRAJECTORY_HPP

#include <memory>
#include <string>
#include <vector>

#include "crackdiff/grid.hpp"
#include "crackdiff/params.hpp"

namespace crackdiff {

struct Snapshot {
  double t;
  std::vector<double> values;
};

// Per-step interface diagnostics of the homogenized runs.
struct InterfaceRecord {
  double t;
  double F;           // flux imposed on the right subdomain at x = 0
  double u0_minus, u0_plus;
  double dxu0_minus, dxu0_plus;
  int iterations;
  double last_ratio;  // last |dF ratio| of the inner iteration (0 when idle)
};

struct Trajectory {
  std::string model;  // direct | fixed_point | full_weak | approx | profile_variant
  ParamSet params;
  double dt = 0.0;
  double t_end = 0.0;
  double delta = 0.0;             // dipole regularization width (full_weak only)
  double expected_mass_rate = 0.0;

  // 1-D runs: dof coordinates for the snapshot values. Direct runs instead
  // carry the grid; values are indexed by compact active-cell id.
  std::vector<double> xs;
  std::shared_ptr<const CrackedGrid> grid;

  std::vector<Snapshot> snapshots;
  std::vector<double> mass_t, mass;
  std::vector<double> probe_x;
  std::vector<double> probe_t;
  std::vector<std::vector<double>> probe;  // one series per probe_x entry
  std::vector<InterfaceRecord> interface_series;

  long long total_solver_iterations = 0;

  const Snapshot& snapshot_at(double t) const;  // exact-time lookup (1e-9)
};

// Shared run-loop bookkeeping: which steps get snapshots, probes every step.
std::vector<int> snapshot_steps(const std::vector<double>& times, double dt, double t_end);

}  // namespace crackdiff

#endif
