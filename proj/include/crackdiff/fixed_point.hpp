#ifndef CRACKDIFF_FIXED_POINT_HPP
#define CRACKDIFF_FIXED_POINT_HPP

#include <span>

#include "crackdiff/step_system.hpp"
#include "crackdiff/trajectory.hpp"

namespace crackdiff {

struct FixedPointOptions {
  double tol = 1e-10;
  int max_iter = 500;
  double flux_floor = 1e-12;
  bool accelerate = false;
};

// Two mirrored subdomains coupled through x = 0: the right half sees a flux F,
// the left half a Dirichlet value tied to the right trace. One call resolves a
// single implicit time step by iterating F to a fixed point.
struct CoupledStepResult {
  std::vector<double> u_minus, u_plus;
  double F;  // interface flux applied to the right subdomain
  double u0_minus, u0_plus;
  double dxu0_minus, dxu0_plus;
  int iterations;
  std::vector<double> ratios;  // successive |dF| ratios
  double last_ratio;
  bool accelerated;
};

CoupledStepResult coupled_step(const StepSystem& minus_sys, const StepSystem& plus_sys,
                               const IntervalGrid& minus_grid, const IntervalGrid& plus_grid,
                               std::span<const double> prev_minus,
                               std::span<const double> prev_plus, double F_init, double alpha,
                               double beta, const FixedPointOptions& opt);

struct FixedPointConfig {
  ParamSet params;  // epsilon is not used by the homogenized model
  int n_per_side = 400;
  double dt = 1e-3;
  double t_end = 0.5;
  FixedPointOptions options;
  bool warm_start = true;  // seed each step's F with the previous converged value
  std::vector<double> snapshot_times;
  std::vector<double> probe_x{0.5};
};

// Snapshot values are the minus-side cells followed by the plus-side cells.
Trajectory run_fixed_point(const FixedPointConfig& cfg);

}  // namespace crackdiff

#endif
