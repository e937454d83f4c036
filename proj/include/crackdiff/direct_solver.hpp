#ifndef CRACKDIFF_DIRECT_SOLVER_HPP
#define CRACKDIFF_DIRECT_SOLVER_HPP

#include "crackdiff/step_system.hpp"
#include "crackdiff/trajectory.hpp"

namespace crackdiff {

// Resolved-crack simulation on one period cell.
struct DirectRunConfig {
  ParamSet params;
  int nx = 200;
  int ny = 0;  // 0: smallest aligned row count with hy <= hx
  double dt = 1e-3;
  double t_end = 0.5;
  std::vector<double> snapshot_times;  // empty: {t_end}
  std::vector<double> probe_x{0.5};
  double cg_rtol = 1e-12;
  bool parallel = true;
};

// Smallest even ny such that the crack walls land on y-faces and hy <= hx_target.
int auto_ny(double alpha, double epsilon, double hx_target);

// Boundary data of the resolved model for a validated ParamSet.
// Constant mode: walls carry (alpha-beta)*eps/2, the tip carries beta/alpha.
// Profile mode: walls carry f(x)*eps, the tip is insulated.
BoundaryData direct_boundary_data(const ParamSet& p);

Trajectory run_direct(const DirectRunConfig& cfg);

}  // namespace crackdiff

#endif
