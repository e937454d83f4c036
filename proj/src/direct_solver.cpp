#include "crackdiff/direct_solver.hpp"

#include <algorithm>
#include <cmath>

#include "crackdiff/errors.hpp"
#include "crackdiff/kernels.hpp"

namespace crackdiff {

namespace {

// smallest even modulus m with alpha*m/2 integral
int alignment_modulus(double alpha) {
  for (int m = 2; m <= 100000; m += 2) {
    const double rows = alpha * m / 2.0;
    if (std::abs(rows - std::lround(rows)) <= 1e-9 * m) return m;
  }
  fail(ErrorCode::AlignmentError, "no aligned row count below 100000 for this alpha");
}

}  // namespace

int auto_ny(double alpha, double epsilon, double hx_target) {
  const int m = alignment_modulus(alpha);
  const int k = std::max(1, static_cast<int>(std::ceil(epsilon / (hx_target * m) - 1e-12)));
  return k * m;
}

BoundaryData direct_boundary_data(const ParamSet& p) {
  BoundaryData bd;
  bd.flux(FaceTag::Heated, 1.0).flux(FaceTag::Outer, 0.0);
  if (p.wall_flux_mode == WallFluxMode::Constant) {
    bd.flux(FaceTag::CrackWall, (p.alpha - p.beta) * p.epsilon / 2.0);
    bd.flux(FaceTag::CrackTip, p.alpha > 0.0 ? p.beta / p.alpha : 0.0);
  } else {
    const WallFluxProfile f = resolve_profile(p);
    const double eps = p.epsilon;
    bd.flux(FaceTag::CrackWall, [f, eps](double x, double) { return f(x) * eps; });
    bd.flux(FaceTag::CrackTip, 0.0);
  }
  return bd;
}

Trajectory run_direct(const DirectRunConfig& cfg) {
  validate_params(cfg.params);
  if (!(cfg.dt > 0.0) || !(cfg.t_end > 0.0))
    fail(ErrorCode::OutOfRange, "dt and t_end must be positive");

  const double hx = 2.0 / cfg.nx;
  const int ny = cfg.ny > 0 ? cfg.ny : auto_ny(cfg.params.alpha, cfg.params.epsilon, hx);
  auto grid = std::make_shared<CrackedGrid>(cfg.params, cfg.nx, ny);

  auto sys = assemble_step_system(*grid, cfg.dt);
  sys.cg_rtol = cfg.cg_rtol;
  sys.parallel = cfg.parallel;
  const BoundaryData bd = direct_boundary_data(cfg.params);

  const int nsteps = static_cast<int>(std::lround(cfg.t_end / cfg.dt));
  if (std::abs(nsteps * cfg.dt - cfg.t_end) > 1e-9)
    fail(ErrorCode::ConfigError, "t_end must be a multiple of dt");
  const std::vector<double> snap_times =
      cfg.snapshot_times.empty() ? std::vector<double>{cfg.t_end} : cfg.snapshot_times;
  const auto snap_steps = snapshot_steps(snap_times, cfg.dt, cfg.t_end);

  Trajectory traj;
  traj.model = "direct";
  traj.params = cfg.params;
  traj.dt = cfg.dt;
  traj.t_end = cfg.t_end;
  traj.expected_mass_rate = cfg.params.epsilon;
  traj.grid = grid;
  traj.probe_x = cfg.probe_x;
  traj.probe.resize(cfg.probe_x.size());

  // probe columns: cell column nearest each requested x, y-averaged over eps
  std::vector<int> probe_col;
  for (double px : cfg.probe_x) {
    int best = 0;
    for (int i = 1; i < cfg.nx; ++i)
      if (std::abs(grid->cell_x(i) - px) < std::abs(grid->cell_x(best) - px)) best = i;
    probe_col.push_back(best);
  }

  const int n = grid->active_count();
  std::vector<double> u(n, 0.0);
  const double area = grid->cell_area();

  const auto record = [&](double t) {
    traj.mass_t.push_back(t);
    traj.mass.push_back(kernels::sum(u) * area);
    traj.probe_t.push_back(t);
    for (std::size_t k = 0; k < probe_col.size(); ++k) {
      double col = 0.0;
      for (int j = 0; j < ny; ++j)
        if (grid->is_active(probe_col[k], j)) col += u[grid->cell(probe_col[k], j)];
      traj.probe[k].push_back(col * grid->hy() / cfg.params.epsilon);
    }
  };

  record(0.0);
  for (int snap : snap_steps)
    if (snap == 0) traj.snapshots.push_back({0.0, u});

  SolveReport rep;
  for (int k = 1; k <= nsteps; ++k) {
    u = step(sys, u, bd, {}, &rep);
    traj.total_solver_iterations += rep.iterations;
    const double t = k * cfg.dt;
    record(t);
    for (std::size_t s = 0; s < snap_steps.size(); ++s)
      if (snap_steps[s] == k) traj.snapshots.push_back({snap_times[s], u});
  }
  return traj;
}

}  // namespace crackdiff
