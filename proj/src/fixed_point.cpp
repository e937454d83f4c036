#include "crackdiff/fixed_point.hpp"

#include <cmath>
#include <cstdio>

#include "crackdiff/errors.hpp"
#include "crackdiff/kernels.hpp"

namespace crackdiff {

namespace {

// One inner evaluation: solve the right subdomain under flux F, transfer the
// scaled trace as a Dirichlet value to the left subdomain, and read the flux
// the left solution sends back.
struct InnerEval {
  std::vector<double> u_minus, u_plus;
  double g, trace_plus, dx_minus, F_next;
};

InnerEval evaluate(const StepSystem& minus_sys, const StepSystem& plus_sys,
                   const IntervalGrid& minus_grid, const IntervalGrid& plus_grid,
                   std::span<const double> prev_minus, std::span<const double> prev_plus,
                   double F, double alpha, double beta) {
  InnerEval ev;
  BoundaryData bd_plus;
  bd_plus.flux(FaceTag::Left, F).flux(FaceTag::Right, 0.0);
  ev.u_plus = step(plus_sys, prev_plus, bd_plus);
  ev.trace_plus = face_trace(plus_grid, ev.u_plus, FaceTag::Left, F);
  ev.g = (1.0 - alpha) * ev.trace_plus;

  BoundaryData bd_minus;
  bd_minus.flux(FaceTag::Left, 1.0 - alpha).dirichlet(FaceTag::Right, ev.g);
  const std::vector<double> source(minus_sys.matrix.size(), alpha - beta);
  ev.u_minus = step(minus_sys, prev_minus, bd_minus, source);
  ev.dx_minus = face_flux_dirichlet(minus_grid, ev.u_minus, FaceTag::Right, ev.g);
  ev.F_next = beta - ev.dx_minus;
  return ev;
}

}  // namespace

CoupledStepResult coupled_step(const StepSystem& minus_sys, const StepSystem& plus_sys,
                               const IntervalGrid& minus_grid, const IntervalGrid& plus_grid,
                               std::span<const double> prev_minus,
                               std::span<const double> prev_plus, double F_init, double alpha,
                               double beta, const FixedPointOptions& opt) {
  if (minus_grid.n() != plus_grid.n())
    fail(ErrorCode::DomainMismatch, "interface coupling requires mirrored subdomain grids");

  CoupledStepResult res;
  res.accelerated = false;
  res.iterations = 0;
  res.last_ratio = 0.0;

  const auto eval = [&](double F) {
    ++res.iterations;
    return evaluate(minus_sys, plus_sys, minus_grid, plus_grid, prev_minus, prev_plus, F, alpha,
                    beta);
  };
  const auto finish = [&](const InnerEval& ev, double F_applied) {
    res.u_minus = ev.u_minus;
    res.u_plus = ev.u_plus;
    res.F = ev.F_next;
    res.u0_minus = ev.g;
    res.u0_plus = ev.trace_plus;
    res.dxu0_minus = ev.dx_minus;
    res.dxu0_plus = -F_applied;
  };
  const auto converged = [&](double dF, double F_ref) {
    return std::abs(dF) <= opt.tol * std::max(std::abs(F_ref), opt.flux_floor);
  };

  double F = F_init;
  double G_prev = 0.0;
  bool have_prev = false;

  // The inner map is affine in F with slope exactly -(1-alpha), so two
  // evaluations determine the fixed point in closed form. At alpha = 0 the
  // plain iteration has |slope| = 1 and cannot settle, so the closed form is
  // applied there regardless of the flag.
  if (opt.accelerate || alpha == 0.0) {
    const double F0 = F;
    const auto ev0 = eval(F0);
    const double F1 = ev0.F_next;
    const auto ev1 = eval(F1);
    const double G0 = F1 - F0, G1 = ev1.F_next - F1;
    if (std::abs(G0) > 0.0) res.ratios.push_back(std::abs(G1) / std::abs(G0));
    const double F_star = F0 + (F1 - F0) / (2.0 - alpha);
    const auto ev_star = eval(F_star);
    res.accelerated = true;
    if (!res.ratios.empty()) res.last_ratio = res.ratios.back();
    if (converged(ev_star.F_next - F_star, F_star)) {
      finish(ev_star, F_star);
      return res;
    }
    F = ev_star.F_next;
  }

  while (true) {
    if (res.iterations >= opt.max_iter) {
      char buf[128];
      std::snprintf(buf, sizeof buf,
                    "interface flux not converged after %d iterations (last ratio %.6g)",
                    res.iterations, res.last_ratio);
      fail(ErrorCode::NoConvergence, buf);
    }
    const auto ev = eval(F);
    const double G = ev.F_next - F;
    if (have_prev && std::abs(G_prev) > 0.0) {
      res.ratios.push_back(std::abs(G) / std::abs(G_prev));
      res.last_ratio = res.ratios.back();
    }
    if (converged(G, F)) {
      finish(ev, F);
      return res;
    }
    F = ev.F_next;
    G_prev = G;
    have_prev = true;
  }
}

Trajectory run_fixed_point(const FixedPointConfig& cfg) {
  validate_params(cfg.params);
  if (cfg.params.wall_flux_mode != WallFluxMode::Constant)
    fail(ErrorCode::InconsistentMode, "the interface model uses constant-mode crack data");
  if (!(cfg.dt > 0.0) || !(cfg.t_end > 0.0))
    fail(ErrorCode::OutOfRange, "dt and t_end must be positive");
  const double alpha = cfg.params.alpha, beta = cfg.params.beta;

  const IntervalGrid minus_grid(-1.0, 0.0, cfg.n_per_side);
  const IntervalGrid plus_grid(0.0, 1.0, cfg.n_per_side);
  const auto minus_sys = assemble_step_system(minus_grid, cfg.dt, {FaceTag::Right});
  const auto plus_sys = assemble_step_system(plus_grid, cfg.dt);

  const int nsteps = static_cast<int>(std::lround(cfg.t_end / cfg.dt));
  if (std::abs(nsteps * cfg.dt - cfg.t_end) > 1e-9)
    fail(ErrorCode::ConfigError, "t_end must be a multiple of dt");
  const std::vector<double> snap_times =
      cfg.snapshot_times.empty() ? std::vector<double>{cfg.t_end} : cfg.snapshot_times;
  const auto snap_steps = snapshot_steps(snap_times, cfg.dt, cfg.t_end);

  Trajectory traj;
  traj.model = "fixed_point";
  traj.params = cfg.params;
  traj.dt = cfg.dt;
  traj.t_end = cfg.t_end;
  traj.expected_mass_rate = 1.0;
  traj.probe_x = cfg.probe_x;
  traj.probe.resize(cfg.probe_x.size());
  const int n = cfg.n_per_side;
  traj.xs.resize(2 * n);
  for (int i = 0; i < n; ++i) traj.xs[i] = minus_grid.dof_x(i);
  for (int i = 0; i < n; ++i) traj.xs[n + i] = plus_grid.dof_x(i);

  std::vector<double> u_minus(n, 0.0), u_plus(n, 0.0);
  const auto concatenated = [&] {
    std::vector<double> all(u_minus.begin(), u_minus.end());
    all.insert(all.end(), u_plus.begin(), u_plus.end());
    return all;
  };
  const auto record = [&](double t) {
    traj.mass_t.push_back(t);
    traj.mass.push_back((kernels::sum_serial(u_minus) + kernels::sum_serial(u_plus)) *
                        minus_grid.h());
    traj.probe_t.push_back(t);
    for (std::size_t k = 0; k < cfg.probe_x.size(); ++k) {
      const double px = cfg.probe_x[k];
      const auto& g = px < 0.0 ? minus_grid : plus_grid;
      const auto& uu = px < 0.0 ? u_minus : u_plus;
      int best = 0;
      for (int i = 1; i < n; ++i)
        if (std::abs(g.dof_x(i) - px) < std::abs(g.dof_x(best) - px)) best = i;
      traj.probe[k].push_back(uu[best]);
    }
  };

  record(0.0);
  for (std::size_t s = 0; s < snap_steps.size(); ++s)
    if (snap_steps[s] == 0) traj.snapshots.push_back({0.0, concatenated()});

  double F = 0.0;  // cold start at t = 0
  for (int k = 1; k <= nsteps; ++k) {
    auto res = coupled_step(minus_sys, plus_sys, minus_grid, plus_grid, u_minus, u_plus, F, alpha,
                            beta, cfg.options);
    u_minus = std::move(res.u_minus);
    u_plus = std::move(res.u_plus);
    F = cfg.warm_start ? res.F : 0.0;
    traj.total_solver_iterations += res.iterations;
    const double t = k * cfg.dt;
    record(t);
    traj.interface_series.push_back({t, res.F, res.u0_minus, res.u0_plus, res.dxu0_minus,
                                     res.dxu0_plus, res.iterations, res.last_ratio});
    for (std::size_t s = 0; s < snap_steps.size(); ++s)
      if (snap_steps[s] == k) traj.snapshots.push_back({snap_times[s], concatenated()});
  }
  return traj;
}

}  // namespace crackdiff
