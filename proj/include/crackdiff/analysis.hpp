#ifndef CRACKDIFF_ANALYSIS_HPP
#define CRACKDIFF_ANALYSIS_HPP

#include <span>
#include <vector>

#include "crackdiff/fixed_point.hpp"
#include "crackdiff/trajectory.hpp"

namespace crackdiff {

// Large-time drift of the homogenized solution for beta = 0: the field
// settles to rate * t + w(x) with a per-side rate and a piecewise-quadratic
// zero-mean shape w. The interface condition u(0-) = (1-alpha) u(0+) holds at
// every t, so the rates obey rate_minus = (1-alpha) * rate_plus; total mass
// growth 1 over measure 2 fixes their sum to 1. Closed form:
//   rate_plus  = 1 / (2-alpha),  rate_minus = (1-alpha) / (2-alpha)
//   w(x) = (x^2/2 - x) / (2-alpha) + cplus                       on (0, 1)
//   w(x) = q x^2 - x / (2-alpha) + (1-alpha)*cplus               on (-1, 0)
//     with q = (1 - 3 alpha + alpha^2) / (2 (2-alpha))
//   cplus = -(1-alpha) / (6 (2-alpha))
// At alpha = 0 both sides reduce to x^2/4 - x/2 - 1/12 and the rates to 1/2.
// The constructor re-checks zero mean and the interface identities.
struct DriftProfile {
  double alpha = 0.0;
  double cplus = 0.0;
  double rate_minus = 0.5;
  double rate_plus = 0.5;
  double value_plus(double x) const {
    return (x * x / 2.0 - x) / (2.0 - alpha) + cplus;
  }
  double value_minus(double x) const {
    const double q = (1.0 - 3.0 * alpha + alpha * alpha) / (2.0 * (2.0 - alpha));
    return q * x * x - x / (2.0 - alpha) + (1.0 - alpha) * cplus;
  }
  double operator()(double x) const { return x >= 0.0 ? value_plus(x) : value_minus(x); }
  // full drift value rate * t + w(x) at one time
  double at(double x, double t) const {
    return (x >= 0.0 ? rate_plus : rate_minus) * t + (*this)(x);
  }
  double at_zero_minus() const { return (1.0 - alpha) * cplus; }
  double at_zero_plus() const { return cplus; }
};

DriftProfile drift_profile(double alpha, double beta = 0.0);

// Piecewise-linear interpolation through (xs, values), clamped outside the
// covered range. xs strictly increasing.
double interp_linear(std::span<const double> xs, std::span<const double> values, double x);

// Values of a 1-D field at the active-cell centers of the cracked grid,
// replicated over y. Cells with x < 0 need xs to reach below 0; with a
// right-side-only field they are left at zero.
std::vector<double> project_homog_to_cracked(std::span<const double> xs,
                                             std::span<const double> values,
                                             const CrackedGrid& grid);

struct EpsilonError {
  double err = 0.0;        // relative L2 over active cells with x > 0
  double err_minus = 0.0;  // x < 0 companion, against u_homog / (1 - alpha)
  bool has_err_minus = false;
};

// Compares the direct field with the projected homogenized field at time t1
// (both trajectories must carry a snapshot there).
EpsilonError epsilon_error(const Trajectory& direct, const Trajectory& homog, double t1,
                           bool with_minus = false);

struct ResidualRow {
  double t;
  double jump_u;     // u(0-) - (1-alpha) u(0+)
  double jump_flux;  // dxu(0-) - dxu(0+) - beta
};

std::vector<ResidualRow> transmission_residuals(const Trajectory& traj);

// Largest per-step deviation of the heating rate from the expected one.
double energy_audit(const Trajectory& traj, double expected_rate);

// Per-column zero-extension y-average (crack cells count as zero) and
// material-only y-spread of an active-cell field.
std::vector<double> y_average(const CrackedGrid& grid, std::span<const double> values);
std::vector<double> y_spread(const CrackedGrid& grid, std::span<const double> values);

struct ErrorRow {
  double epsilon;
  int nx, ny;
  double err;
  double err_minus;
  bool has_err_minus;
};

struct ErrorTable {
  double alpha, beta, t1, dt;
  std::vector<ErrorRow> rows;  // epsilons strictly decreasing
};

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;  // floor estimate
  std::vector<double> regime_eps;
};

// Least-squares line through (epsilon, err) over the pre-floor regime: the
// rows whose err exceeds 3x the smallest observed err.
FitResult fit_error_floor(const ErrorTable& table);

struct SweepConfig {
  ParamSet base;                  // epsilon field ignored; taken from the list
  std::vector<double> epsilons;   // strictly decreasing
  int nx = 400;
  double dt = 2e-3;
  double t1 = 0.5;
  int n_1d = 400;                 // cells per unit for the homogenized reference
  double cg_rtol = 1e-12;
  FixedPointOptions fp_options;
  bool with_err_minus = false;
  bool parallel = true;
};

struct SweepResult {
  ErrorTable table;
  FitResult fit;
};

// One homogenized run, one direct run per epsilon, one error row each.
SweepResult sweep_epsilon(const SweepConfig& cfg);

}  // namespace crackdiff

#endif
