#include "crackdiff/weak_solver.hpp"

#include <cmath>

#include "crackdiff/errors.hpp"
#include "crackdiff/linalg.hpp"

namespace crackdiff {

double p1_interpolate(const IntervalGrid& grid, std::span<const double> vertex_values, double x) {
  if (grid.layout() != Layout::VertexP1)
    fail(ErrorCode::InconsistentMode, "p1_interpolate expects a vertex layout");
  if (x < grid.a() - 1e-12 || x > grid.b() + 1e-12)
    fail(ErrorCode::OutOfRange, "interpolation point outside the interval");
  int e = static_cast<int>(std::floor((x - grid.a()) / grid.h()));
  if (e < 0) e = 0;
  if (e > grid.n() - 1) e = grid.n() - 1;
  const double theta = (x - grid.dof_x(e)) / grid.h();
  return (1.0 - theta) * vertex_values[e] + theta * vertex_values[e + 1];
}

namespace {

enum class WeakModel { Full, Approx, Variant };

const char* model_name(WeakModel m) {
  switch (m) {
    case WeakModel::Full: return "full_weak";
    case WeakModel::Approx: return "approx";
    case WeakModel::Variant: return "profile_variant";
  }
  return "?";
}

Trajectory run_weak_common(const WeakRunConfig& cfg, WeakModel model) {
  validate_params(cfg.params);
  const double alpha = cfg.params.alpha, beta = cfg.params.beta;
  switch (model) {
    case WeakModel::Full:
      if (cfg.params.wall_flux_mode != WallFluxMode::Constant)
        fail(ErrorCode::InconsistentMode, "the transmission model uses constant-mode crack data");
      break;
    case WeakModel::Approx:
      if (cfg.params.wall_flux_mode != WallFluxMode::Constant)
        fail(ErrorCode::InconsistentMode, "the small-alpha model uses constant-mode crack data");
      if (beta != 0.0)
        fail(ErrorCode::BetaUnsupported, "the small-alpha model drops the crack-bottom flux");
      break;
    case WeakModel::Variant:
      if (cfg.params.wall_flux_mode != WallFluxMode::Profile)
        fail(ErrorCode::InconsistentMode, "the profile model needs profile-mode crack data");
      break;
  }
  if (cfg.n < 2 || cfg.n % 2 != 0)
    fail(ErrorCode::OddCellCount, "element count must be even so x = 0 is a vertex");
  if (!(cfg.dt > 0.0) || !(cfg.t_end > 0.0))
    fail(ErrorCode::OutOfRange, "dt and t_end must be positive");

  const IntervalGrid grid(-1.0, 1.0, cfg.n, Layout::VertexP1);
  const int n = cfg.n, m = n / 2, ndof = n + 1;
  const double h = grid.h();

  // Dipole width: defaults to two elements, must align with the mesh and stay
  // well inside the right half.
  double delta = 0.0;
  int kd = 0;
  if (model == WeakModel::Full) {
    delta = cfg.delta > 0.0 ? cfg.delta : 2.0 * h;
    kd = static_cast<int>(std::lround(delta / h));
    if (kd < 1 || std::abs(kd * h - delta) > 1e-9 * h)
      fail(ErrorCode::DeltaMisaligned, "dipole width must be a positive multiple of h");
    if (delta > 0.25 + 1e-12)
      fail(ErrorCode::DeltaMisaligned, "dipole width capped at 0.25");
  }

  // Consistent P1 mass and stiffness on the uniform mesh.
  std::vector<double> Ml(ndof, h / 6.0), Md(ndof, 2.0 * h / 3.0), Mu(ndof, h / 6.0);
  Md[0] = Md[n] = h / 3.0;
  Ml[0] = Mu[n] = 0.0;
  std::vector<double> Sl(ndof), Sd(ndof), Su(ndof);
  for (int i = 0; i < ndof; ++i) {
    Sl[i] = Ml[i] / cfg.dt + (i > 0 ? -1.0 / h : 0.0);
    Su[i] = Mu[i] / cfg.dt + (i < n ? -1.0 / h : 0.0);
    Sd[i] = Md[i] / cfg.dt + (i > 0 && i < n ? 2.0 / h : 1.0 / h);
  }
  if (model == WeakModel::Full) {
    // Row i of the dipole couples to the averaged trial value over each
    // element of (0, delta); its columns sum to zero, so the total heat
    // balance is untouched.
    const double c = alpha / (2.0 * delta);
    for (int e = m; e < m + kd; ++e) {
      Sd[e] += c;
      Su[e] += c;
      Sd[e + 1] -= c;
      Sl[e + 1] -= c;
    }
  }

  // Time-independent load: boundary influx at x = -1 plus the model's
  // crack-replacement terms.
  std::vector<double> load(ndof, 0.0);
  load[0] += 1.0 - alpha;
  const auto add_hat_source = [&](double s) {
    for (int i = 0; i <= m; ++i) load[i] += s * ((i == 0 || i == m) ? h / 2.0 : h);
  };
  switch (model) {
    case WeakModel::Full:
      load[m] += beta;
      add_hat_source(alpha - beta);
      break;
    case WeakModel::Approx:
      add_hat_source(alpha);
      break;
    case WeakModel::Variant: {
      const WallFluxProfile f = resolve_profile(cfg.params);
      for (int e = 0; e < m; ++e) {
        const double xL = grid.dof_x(e), xR = grid.dof_x(e + 1);
        const double fL = f(xL), fM = f(0.5 * (xL + xR)), fR = f(xR);
        // Simpson with hat weights; exact while f is linear on the element.
        load[e] += 2.0 * (h / 6.0) * (fL + 2.0 * fM);
        load[e + 1] += 2.0 * (h / 6.0) * (2.0 * fM + fR);
      }
      break;
    }
  }

  const int nsteps = static_cast<int>(std::lround(cfg.t_end / cfg.dt));
  if (std::abs(nsteps * cfg.dt - cfg.t_end) > 1e-9)
    fail(ErrorCode::ConfigError, "t_end must be a multiple of dt");
  const std::vector<double> snap_times =
      cfg.snapshot_times.empty() ? std::vector<double>{cfg.t_end} : cfg.snapshot_times;
  const auto snap_steps = snapshot_steps(snap_times, cfg.dt, cfg.t_end);

  Trajectory traj;
  traj.model = model_name(model);
  traj.params = cfg.params;
  traj.dt = cfg.dt;
  traj.t_end = cfg.t_end;
  traj.delta = delta;
  traj.expected_mass_rate = 1.0;
  traj.probe_x = cfg.probe_x;
  traj.probe.resize(cfg.probe_x.size());
  traj.xs.resize(ndof);
  for (int i = 0; i < ndof; ++i) traj.xs[i] = grid.dof_x(i);

  std::vector<double> u(ndof, 0.0), rhs(ndof);
  const auto record = [&](double t) {
    traj.mass_t.push_back(t);
    double mass = 0.5 * h * (u[0] + u[n]);
    for (int i = 1; i < n; ++i) mass += h * u[i];
    traj.mass.push_back(mass);
    traj.probe_t.push_back(t);
    for (std::size_t k = 0; k < cfg.probe_x.size(); ++k)
      traj.probe[k].push_back(p1_interpolate(grid, u, cfg.probe_x[k]));
  };
  const auto take_snapshots = [&](int step_index) {
    for (std::size_t s = 0; s < snap_steps.size(); ++s)
      if (snap_steps[s] == step_index) traj.snapshots.push_back({snap_times[s], u});
  };

  record(0.0);
  take_snapshots(0);
  const int right = model == WeakModel::Full ? m + kd : m;
  for (int k = 1; k <= nsteps; ++k) {
    for (int i = 0; i < ndof; ++i) {
      double acc = Md[i] * u[i];
      if (i > 0) acc += Ml[i] * u[i - 1];
      if (i < n) acc += Mu[i] * u[i + 1];
      rhs[i] = acc / cfg.dt + load[i];
    }
    solve_tridiag(Sl, Sd, Su, rhs);
    u.swap(rhs);
    for (int i = 0; i < ndof; ++i)
      if (!std::isfinite(u[i])) fail(ErrorCode::NaNDetected, "non-finite value after solve");

    const double t = k * cfg.dt;
    record(t);
    const double dxm = (u[m] - u[m - 1]) / h;
    const double dxp = (u[right + 1] - u[right]) / h;
    traj.interface_series.push_back({t, -dxp, u[m], u[right], dxm, dxp, 0, 0.0});
    take_snapshots(k);
  }
  return traj;
}

}  // namespace

Trajectory run_weak(const WeakRunConfig& cfg) { return run_weak_common(cfg, WeakModel::Full); }

Trajectory run_approx(const WeakRunConfig& cfg) { return run_weak_common(cfg, WeakModel::Approx); }

Trajectory run_profile_variant(const WeakRunConfig& cfg) {
  return run_weak_common(cfg, WeakModel::Variant);
}

}  // namespace crackdiff
