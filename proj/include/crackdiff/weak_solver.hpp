#ifndef CRACKDIFF_WEAK_SOLVER_HPP
#define CRACKDIFF_WEAK_SOLVER_HPP

#include <span>

#include "crackdiff/trajectory.hpp"

namespace crackdiff {

// Single-domain P1 discretizations on (-1, 1) with backward Euler and a
// consistent mass matrix. Three variants share the transport part and differ
// in how the crack enters:
//   full_weak:      volume source on (-1,0), interface point load, and a
//                   dipole term regularized over (0, delta)
//   approx:         volume source alpha on (-1,0) only (small-alpha model,
//                   beta must vanish)
//   profile_variant: volume source 2 f(x) on (-1,0) from the wall profile
struct WeakRunConfig {
  ParamSet params;  // epsilon is not used by the homogenized models
  int n = 800;      // elements on (-1, 1); even, so x = 0 is a vertex
  double dt = 1e-3;
  double t_end = 0.5;
  double delta = 0.0;  // dipole width; 0 picks 2h; must be a multiple of h, <= 0.25
  std::vector<double> snapshot_times;
  std::vector<double> probe_x{0.5};
};

Trajectory run_weak(const WeakRunConfig& cfg);
Trajectory run_approx(const WeakRunConfig& cfg);
Trajectory run_profile_variant(const WeakRunConfig& cfg);

// P1 interpolation of vertex values at an arbitrary point of [a, b].
double p1_interpolate(const IntervalGrid& grid, std::span<const double> vertex_values, double x);

}  // namespace crackdiff

#endif
