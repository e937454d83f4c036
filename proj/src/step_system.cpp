#include "crackdiff/step_system.hpp"

#include <cmath>

#include "crackdiff/errors.hpp"

namespace crackdiff {

namespace {
constexpr int kW = 0, kE = 1, kS = 2, kN = 3;
}

StepSystem assemble_step_system(const CrackedGrid& grid, double dt) {
  if (!(dt > 0.0)) fail(ErrorCode::OutOfRange, "dt must be positive");
  const int n = grid.active_count();
  StepSystem sys;
  sys.matrix = StencilMatrix(n, 4);
  sys.dt = dt;
  sys.mass.assign(n, grid.cell_area());

  const double cx = grid.hy() / grid.hx();  // transmissibility of an x-face
  const double cy = grid.hx() / grid.hy();
  const int nx = grid.nx(), ny = grid.ny();

  for (int c = 0; c < n; ++c) {
    const int i = grid.cell_i(c), j = grid.cell_j(c);
    double diag = sys.mass[c] / dt;
    if (i > 0 && grid.is_active(i - 1, j)) {
      sys.matrix.set_neighbor(c, kW, grid.cell(i - 1, j), -cx);
      diag += cx;
    }
    if (i < nx - 1 && grid.is_active(i + 1, j)) {
      sys.matrix.set_neighbor(c, kE, grid.cell(i + 1, j), -cx);
      diag += cx;
    }
    // y neighbors wrap periodically; crack walls break the coupling
    const int js = j == 0 ? ny - 1 : j - 1;
    const int jn = j == ny - 1 ? 0 : j + 1;
    double ypair = 0.0;
    if (grid.is_active(i, js)) {
      sys.matrix.set_neighbor(c, kS, grid.cell(i, js), -cy);
      ypair += cy;
    }
    if (grid.is_active(i, jn)) {
      sys.matrix.set_neighbor(c, kN, grid.cell(i, jn), -cy);
      ypair += cy;
    }
    sys.matrix.diag(c) = diag + ypair;
  }
  sys.neumann_faces = grid.boundary_faces();
  return sys;
}

StepSystem assemble_step_system(const IntervalGrid& grid, double dt,
                                const std::vector<FaceTag>& dirichlet_tags) {
  if (!(dt > 0.0)) fail(ErrorCode::OutOfRange, "dt must be positive");
  if (grid.layout() != Layout::CellCenter)
    fail(ErrorCode::InconsistentMode, "finite-volume assembly needs a cell-centered grid");
  const int n = grid.n();
  const double h = grid.h();
  StepSystem sys;
  sys.matrix = StencilMatrix(n, 2);
  sys.dt = dt;
  sys.mass.assign(n, h);

  for (int c = 0; c < n; ++c) {
    double diag = h / dt;
    if (c > 0) {
      sys.matrix.set_neighbor(c, 0, c - 1, -1.0 / h);
      diag += 1.0 / h;
    }
    if (c < n - 1) {
      sys.matrix.set_neighbor(c, 1, c + 1, -1.0 / h);
      diag += 1.0 / h;
    }
    sys.matrix.diag(c) = diag;
  }

  bool left_dirichlet = false, right_dirichlet = false;
  for (FaceTag t : dirichlet_tags) {
    if (t == FaceTag::Left)
      left_dirichlet = true;
    else if (t == FaceTag::Right)
      right_dirichlet = true;
    else
      fail(ErrorCode::NotBoundaryFace, "interval grids only expose Left/Right faces");
  }
  if (left_dirichlet) {
    sys.matrix.diag(0) += 2.0 / h;
    sys.dirichlet_faces.push_back({0, FaceTag::Left, 2.0 / h});
  } else {
    sys.neumann_faces.push_back({0, FaceTag::Left, 1.0, grid.a(), 0.0});
  }
  if (right_dirichlet) {
    sys.matrix.diag(n - 1) += 2.0 / h;
    sys.dirichlet_faces.push_back({n - 1, FaceTag::Right, 2.0 / h});
  } else {
    sys.neumann_faces.push_back({n - 1, FaceTag::Right, 1.0, grid.b(), 0.0});
  }
  return sys;
}

std::vector<double> step(const StepSystem& sys, std::span<const double> prev,
                         const BoundaryData& bd, std::span<const double> source,
                         SolveReport* report, std::span<const double> guess) {
  const int n = sys.matrix.size();
  if (static_cast<int>(prev.size()) != n)
    fail(ErrorCode::DomainMismatch, "previous field size does not match the system");
  if (!source.empty() && static_cast<int>(source.size()) != n)
    fail(ErrorCode::DomainMismatch, "source size does not match the system");

  std::vector<double> rhs(n);
  for (int c = 0; c < n; ++c) {
    rhs[c] = sys.mass[c] / sys.dt * prev[c];
    if (!source.empty()) rhs[c] += source[c] * sys.mass[c];
  }
  for (const auto& f : sys.neumann_faces)
    rhs[f.cell] += bd.flux_at(f.tag, f.x, f.y) * f.measure;
  for (const auto& f : sys.dirichlet_faces) {
    const auto g = bd.dirichlet_value(f.tag);
    if (!g) fail(ErrorCode::InconsistentMode, "missing Dirichlet value for an assembled face");
    rhs[f.cell] += f.coef * *g;
  }

  std::vector<double> u(n);
  SolveReport rep;
  if (sys.matrix.slots() == 2) {
    std::vector<double> lower(n, 0.0), diag(n), upper(n, 0.0);
    for (int c = 0; c < n; ++c) {
      diag[c] = sys.matrix.diag(c);
      if (sys.matrix.neighbor_index(c, 0) >= 0) lower[c] = sys.matrix.neighbor_coef(c, 0);
      if (sys.matrix.neighbor_index(c, 1) >= 0) upper[c] = sys.matrix.neighbor_coef(c, 1);
    }
    u = rhs;
    solve_tridiag(lower, diag, upper, u);
    rep.converged = true;
  } else {
    if (guess.empty()) guess = prev;
    u.assign(guess.begin(), guess.end());
    rep = cg_solve(sys.matrix, rhs, u, sys.cg_rtol, 10 * n, sys.parallel);
  }
  for (double v : u)
    if (!std::isfinite(v)) fail(ErrorCode::NaNDetected, "non-finite value after implicit step");
  if (report) *report = rep;
  return u;
}

double face_trace(const IntervalGrid& grid, std::span<const double> values, FaceTag end,
                  double q) {
  if (static_cast<int>(values.size()) != grid.dof_count())
    fail(ErrorCode::DomainMismatch, "field size does not match the grid");
  const double half = 0.5 * grid.h();
  if (end == FaceTag::Left) return values.front() + half * q;
  if (end == FaceTag::Right) return values.back() + half * q;
  fail(ErrorCode::NotBoundaryFace, "face_trace expects Left or Right");
}

double face_flux_dirichlet(const IntervalGrid& grid, std::span<const double> values, FaceTag end,
                           double g) {
  if (static_cast<int>(values.size()) != grid.dof_count())
    fail(ErrorCode::DomainMismatch, "field size does not match the grid");
  const double h = grid.h();
  if (end == FaceTag::Left) return 2.0 * (values.front() - g) / h;
  if (end == FaceTag::Right) return 2.0 * (g - values.back()) / h;
  fail(ErrorCode::NotBoundaryFace, "face_flux_dirichlet expects Left or Right");
}

}  // namespace crackdiff
