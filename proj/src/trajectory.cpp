#include "crackdiff/trajectory.hpp"

#include <cmath>
#include <cstdio>

#include "crackdiff/errors.hpp"

namespace crackdiff {

const Snapshot& Trajectory::snapshot_at(double t) const {
  for (const auto& s : snapshots)
    if (std::abs(s.t - t) <= 1e-9) return s;
  char buf[64];
  std::snprintf(buf, sizeof buf, "no snapshot at t = %g", t);
  fail(ErrorCode::MissingArtifact, buf);
}

std::vector<int> snapshot_steps(const std::vector<double>& times, double dt, double t_end) {
  std::vector<int> steps;
  for (double s : times) {
    if (s < 0.0 || s > t_end + 1e-9) fail(ErrorCode::OutOfRange, "snapshot time outside the run");
    const double k = s / dt;
    const int ki = static_cast<int>(std::lround(k));
    if (std::abs(k - ki) > 1e-6)
      fail(ErrorCode::ConfigError, "snapshot times must be multiples of dt");
    steps.push_back(ki);
  }
  return steps;
}

}  // namespace crackdiff
