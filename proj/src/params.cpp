#include "crackdiff/params.hpp"

#include <cmath>
#include <cstdio>

#include "crackdiff/errors.hpp"

namespace crackdiff {

WallFluxProfile WallFluxProfile::linear(double alpha) {
  WallFluxProfile p;
  p.id_ = "linear";
  p.xs_ = {-1.0, 0.0};
  p.fs_ = {alpha, 0.0}; // f(x) = -alpha*x sampled at the endpoints
  return p;
}

WallFluxProfile WallFluxProfile::tabulated(std::vector<std::pair<double, double>> table) {
  if (table.size() < 2) fail(ErrorCode::InsufficientPoints, "profile table needs >= 2 points");
  WallFluxProfile p;
  p.id_ = "tabulated";
  for (auto& [x, f] : table) {
    if (!p.xs_.empty() && x <= p.xs_.back())
      fail(ErrorCode::OutOfRange, "profile table x values must be strictly increasing");
    p.xs_.push_back(x);
    p.fs_.push_back(f);
  }
  if (std::abs(p.xs_.front() + 1.0) > 1e-12 || std::abs(p.xs_.back()) > 1e-12)
    fail(ErrorCode::DomainMismatch, "profile table must cover [-1, 0]");
  return p;
}

double WallFluxProfile::operator()(double x) const {
  if (x <= xs_.front()) return fs_.front();
  if (x >= xs_.back()) return fs_.back();
  // linear interpolation; tables are tiny, a scan is fine
  std::size_t k = 1;
  while (xs_[k] < x) ++k;
  const double t = (x - xs_[k - 1]) / (xs_[k] - xs_[k - 1]);
  return fs_[k - 1] + t * (fs_[k] - fs_[k - 1]);
}

double WallFluxProfile::integral() const {
  // trapezoid over the breakpoints, exact for the piecewise-linear interpolant
  double s = 0.0;
  for (std::size_t k = 1; k < xs_.size(); ++k)
    s += 0.5 * (fs_[k - 1] + fs_[k]) * (xs_[k] - xs_[k - 1]);
  return s;
}

void validate_params(const ParamSet& p) {
  char buf[128];
  if (!(p.alpha >= 0.0 && p.alpha < 1.0)) {
    std::snprintf(buf, sizeof buf, "alpha = %g outside [0, 1)", p.alpha);
    fail(ErrorCode::OutOfRange, buf);
  }
  if (p.alpha == 0.0) {
    if (p.beta != 0.0) fail(ErrorCode::OutOfRange, "beta must be 0 when alpha = 0");
  } else if (!(p.beta >= 0.0 && p.beta < p.alpha)) {
    std::snprintf(buf, sizeof buf, "beta = %g outside [0, alpha = %g)", p.beta, p.alpha);
    fail(ErrorCode::OutOfRange, buf);
  }
  if (!(p.epsilon > 0.0 && p.epsilon <= 1.0)) {
    std::snprintf(buf, sizeof buf, "epsilon = %g outside (0, 1]", p.epsilon);
    fail(ErrorCode::OutOfRange, buf);
  }
  if (p.wall_flux_mode == WallFluxMode::Profile) {
    if (p.beta != 0.0) fail(ErrorCode::InconsistentMode, "profile mode requires beta = 0");
    const WallFluxProfile f = resolve_profile(p);
    const double mass = f.integral();
    if (std::abs(mass - 0.5 * p.alpha) > 1e-12) {
      std::snprintf(buf, sizeof buf, "profile integral %.17g != alpha/2 = %.17g", mass,
                    0.5 * p.alpha);
      fail(ErrorCode::ProfileMassMismatch, buf);
    }
  }
}

WallFluxProfile resolve_profile(const ParamSet& p) {
  if (p.profile_id == "linear") return WallFluxProfile::linear(p.alpha);
  if (p.profile_id == "tabulated") return WallFluxProfile::tabulated(p.profile_table);
  fail(ErrorCode::ConfigError, "unknown profile_id '" + p.profile_id + "'");
}

}  // namespace crackdiff
