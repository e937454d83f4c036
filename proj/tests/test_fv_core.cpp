#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "crackdiff/errors.hpp"
#include "crackdiff/kernels.hpp"
#include "crackdiff/step_system.hpp"

using namespace crackdiff;

TEST_CASE("hand-assembled 4x4 system with a Dirichlet end") {
  IntervalGrid g(0.0, 1.0, 4);
  const auto sys = assemble_step_system(g, 1.0, {FaceTag::Left});
  const double h = 0.25;
  // first cell: mass/dt + interior face + half-cell Dirichlet closure
  CHECK(sys.matrix.diag(0) == doctest::Approx(h + 1 / h + 2 / h).epsilon(1e-15));
  CHECK(sys.matrix.diag(1) == doctest::Approx(h + 2 / h).epsilon(1e-15));
  CHECK(sys.matrix.diag(2) == doctest::Approx(h + 2 / h).epsilon(1e-15));
  CHECK(sys.matrix.diag(3) == doctest::Approx(h + 1 / h).epsilon(1e-15));
  CHECK(sys.matrix.neighbor_coef(1, 0) == doctest::Approx(-1 / h));
  CHECK(sys.matrix.neighbor_coef(1, 1) == doctest::Approx(-1 / h));
  REQUIRE(sys.dirichlet_faces.size() == 1);
  CHECK(sys.dirichlet_faces[0].coef == doctest::Approx(2 / h));
}

TEST_CASE("two-cell step matches the manual solve") {
  // (0,1), n = 2, dt = 1, unit influx on the left, start from zero:
  // [[2.5, -2], [-2, 2.5]] u = [1, 0]  =>  u = (10/9, 8/9)
  IntervalGrid g(0.0, 1.0, 2);
  const auto sys = assemble_step_system(g, 1.0);
  BoundaryData bd;
  bd.flux(FaceTag::Left, 1.0).flux(FaceTag::Right, 0.0);
  const std::vector<double> prev(2, 0.0);
  const auto u = step(sys, prev, bd);
  CHECK(u[0] == doctest::Approx(10.0 / 9.0).epsilon(1e-14));
  CHECK(u[1] == doctest::Approx(8.0 / 9.0).epsilon(1e-14));
}

TEST_CASE("face trace examples") {
  {
    // u(x) = x sampled at cell centers of (0,1); left face with q = -1 (n = -e_x)
    IntervalGrid g(0.0, 1.0, 10);
    std::vector<double> u(10);
    for (int i = 0; i < 10; ++i) u[i] = g.dof_x(i);
    CHECK(face_trace(g, u, FaceTag::Left, -1.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(face_trace(g, u, FaceTag::Right, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
  }
  {
    // u(x) = x^2, h = 0.1: first cell value 0.0025 carried to the face when q = 0
    IntervalGrid g(0.0, 1.0, 10);
    std::vector<double> u(10);
    for (int i = 0; i < 10; ++i) u[i] = g.dof_x(i) * g.dof_x(i);
    CHECK(face_trace(g, u, FaceTag::Left, 0.0) == doctest::Approx(0.0025));
  }
}

TEST_CASE("trace and dirichlet flux are mutually consistent on affine fields") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  IntervalGrid g(-1.0, 0.0, 16);
  for (int trial = 0; trial < 25; ++trial) {
    const double a = dist(rng), b = dist(rng);  // u = a + b x
    std::vector<double> u(16);
    for (int i = 0; i < 16; ++i) u[i] = a + b * g.dof_x(i);
    // right face: outward normal +e_x, so q = +du/dx = b
    const double gval = face_trace(g, u, FaceTag::Right, b);
    CHECK(gval == doctest::Approx(a).epsilon(1e-13));
    CHECK(face_flux_dirichlet(g, u, FaceTag::Right, gval) == doctest::Approx(b).epsilon(1e-12));
    // left face: outward normal -e_x, q = -b
    const double gl = face_trace(g, u, FaceTag::Left, -b);
    CHECK(gl == doctest::Approx(a - b).epsilon(1e-13));
    CHECK(face_flux_dirichlet(g, u, FaceTag::Left, gl) == doctest::Approx(b).epsilon(1e-12));
  }
}

TEST_CASE("discrete conservation: mass change equals flux plus source, 1-D") {
  std::mt19937 rng(12);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  IntervalGrid g(-1.0, 0.0, 37);
  const double dt = 0.01;
  const auto sys = assemble_step_system(g, dt);
  std::vector<double> prev(37), source(37);
  for (auto& v : prev) v = dist(rng);
  for (auto& v : source) v = dist(rng);
  const double ql = dist(rng), qr = dist(rng);
  BoundaryData bd;
  bd.flux(FaceTag::Left, ql).flux(FaceTag::Right, qr);
  const auto u = step(sys, prev, bd, source);

  double dM = 0.0, src = 0.0;
  for (int i = 0; i < 37; ++i) {
    dM += (u[i] - prev[i]) * g.h();
    src += source[i] * g.h();
  }
  CHECK(dM / dt == doctest::Approx(ql + qr + src).epsilon(1e-12));
}

TEST_CASE("discrete conservation on the cracked grid") {
  ParamSet p;
  p.alpha = 0.2;
  p.beta = 0.05;
  p.epsilon = 0.2;
  CrackedGrid g(p, 16, 10);
  const double dt = 1e-2;
  auto sys = assemble_step_system(g, dt);
  sys.cg_rtol = 1e-13;
  BoundaryData bd;
  bd.flux(FaceTag::Heated, 1.0)
      .flux(FaceTag::Outer, 0.0)
      .flux(FaceTag::CrackWall, (p.alpha - p.beta) * p.epsilon / 2.0)
      .flux(FaceTag::CrackTip, p.beta / p.alpha);
  std::vector<double> u(g.active_count(), 0.0);
  double t = 0.0;
  for (int k = 0; k < 5; ++k) {
    const auto next = step(sys, u, bd);
    double dM = 0.0;
    for (int c = 0; c < g.active_count(); ++c) dM += (next[c] - u[c]) * g.cell_area();
    CHECK(dM / dt == doctest::Approx(p.epsilon).epsilon(1e-9));
    u = next;
    t += dt;
  }
}

TEST_CASE("y-mirror symmetry survives the implicit step bitwise") {
  ParamSet p;
  p.alpha = 0.2;
  p.epsilon = 0.4;
  CrackedGrid g(p, 12, 20);
  auto sys = assemble_step_system(g, 1e-2);
  BoundaryData bd;
  bd.flux(FaceTag::Heated, 1.0)
      .flux(FaceTag::Outer, 0.0)
      .flux(FaceTag::CrackWall, p.alpha * p.epsilon / 2.0)
      .flux(FaceTag::CrackTip, 0.0);
  std::vector<double> u(g.active_count(), 0.0);
  for (int k = 0; k < 3; ++k) u = step(sys, u, bd);
  for (int c = 0; c < g.active_count(); ++c) CHECK(u[c] == u[g.mirror_cell(c)]);
}

TEST_CASE("nonnegative data keeps the field nonnegative") {
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    IntervalGrid g(0.0, 1.0, 21);
    const auto sys = assemble_step_system(g, 0.05);
    std::vector<double> prev(21), source(21);
    for (auto& v : prev) v = dist(rng);
    for (auto& v : source) v = dist(rng);
    BoundaryData bd;
    bd.flux(FaceTag::Left, dist(rng)).flux(FaceTag::Right, dist(rng));
    const auto u = step(sys, prev, bd, source);
    for (double v : u) CHECK(v >= -1e-12);
  }
}

TEST_CASE("steady reaction-diffusion error drops at second order") {
  // c u - u'' = s with c = 1 via dt = 1 and prev = 0; u* = cos(pi x) on (0,1)
  // has zero Neumann data at both ends.
  const auto solve_error = [](int n) {
    IntervalGrid g(0.0, 1.0, n);
    const auto sys = assemble_step_system(g, 1.0);
    std::vector<double> prev(n, 0.0), source(n);
    const double pi = std::numbers::pi;
    for (int i = 0; i < n; ++i) {
      const double x = g.dof_x(i);
      source[i] = (1.0 + pi * pi) * std::cos(pi * x);
    }
    BoundaryData bd;
    bd.flux(FaceTag::Left, 0.0).flux(FaceTag::Right, 0.0);
    const auto u = step(sys, prev, bd, source);
    double err = 0.0;
    for (int i = 0; i < n; ++i) err = std::max(err, std::abs(u[i] - std::cos(pi * g.dof_x(i))));
    return err;
  };
  const double e1 = solve_error(32);
  const double e2 = solve_error(64);
  CHECK(e1 / e2 >= 3.5);
}

TEST_CASE("assembled operators are symmetric") {
  ParamSet p;
  p.alpha = 0.1;
  p.epsilon = 0.2;
  CrackedGrid g(p, 8, 20);
  const auto sys = assemble_step_system(g, 0.1);
  const int n = g.active_count();
  std::mt19937 rng(14);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> x(n), y(n), Ax(n), Ay(n);
  for (int trial = 0; trial < 5; ++trial) {
    for (auto& v : x) v = dist(rng);
    for (auto& v : y) v = dist(rng);
    sys.matrix.multiply(x, Ax);
    sys.matrix.multiply(y, Ay);
    const double s1 = kernels::dot(Ax, y), s2 = kernels::dot(x, Ay);
    CHECK(std::abs(s1 - s2) <= 1e-12 * (std::abs(s1) + 1.0));
  }
}

TEST_CASE("step validates input sizes") {
  IntervalGrid g(0.0, 1.0, 4);
  const auto sys = assemble_step_system(g, 0.1);
  BoundaryData bd;
  const std::vector<double> bad(3, 0.0);
  CHECK_THROWS_AS(step(sys, bad, bd), Error);
}
