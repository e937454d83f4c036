#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "crackdiff/analysis.hpp"
#include "crackdiff/direct_solver.hpp"
#include "crackdiff/errors.hpp"

using namespace crackdiff;

TEST_CASE("drift coefficients match the hand-derived values") {
  const auto w0 = drift_profile(0.0);
  CHECK(w0.cplus == doctest::Approx(-1.0 / 12.0).epsilon(1e-14));
  // continuous at 0 when there is no crack
  CHECK(w0.at_zero_minus() == doctest::Approx(w0.at_zero_plus()).epsilon(1e-14));

  CHECK(w0.rate_minus == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(w0.rate_plus == doctest::Approx(0.5).epsilon(1e-14));

  const auto w1 = drift_profile(0.1);
  CHECK(w1.cplus == doctest::Approx(-0.9 / 11.4).epsilon(1e-14));
  CHECK(w1.at_zero_minus() == doctest::Approx(-0.9 * 0.9 / 11.4).epsilon(1e-14));
  CHECK(w1.rate_minus == doctest::Approx(0.9 / 1.9).epsilon(1e-14));
  CHECK(w1.rate_plus == doctest::Approx(1.0 / 1.9).epsilon(1e-14));

  const auto w6 = drift_profile(0.6);
  CHECK(w6.cplus == doctest::Approx(-0.4 / 8.4).epsilon(1e-14));
  // shape samples worked out by hand from the quadratic coefficients
  CHECK(w6.value_minus(-0.5) == doctest::Approx(251.0 / 840.0).epsilon(1e-13));
  CHECK(w6.value_plus(0.5) == doctest::Approx(-53.0 / 168.0).epsilon(1e-13));

  CHECK_THROWS_AS((void)drift_profile(0.1, 0.05), Error);
  CHECK_THROWS_AS((void)drift_profile(1.0), Error);
}

TEST_CASE("drift shape integrates to zero on its own") {
  for (double alpha : {0.0, 0.1, 0.3, 0.6, 0.9}) {
    const auto w = drift_profile(alpha);
    // per-side trapezoid, fine enough to see a broken constant and
    // independent of the Simpson check inside drift_profile
    const int n = 20000;
    double acc = 0.0;
    for (int k = 0; k <= n; ++k) {
      const double s = (k == 0 || k == n) ? 0.5 : 1.0;
      acc += s * w.value_minus(-1.0 + static_cast<double>(k) / n);
      acc += s * w.value_plus(static_cast<double>(k) / n);
    }
    CHECK(std::abs(acc / n) <= 1e-7);
  }
}

TEST_CASE("interpolation clamps and reproduces piecewise-linear data") {
  const std::vector<double> xs{-1.0, 0.0, 1.0}, vs{2.0, 0.0, 4.0};
  CHECK(interp_linear(xs, vs, -0.5) == doctest::Approx(1.0));
  CHECK(interp_linear(xs, vs, 0.25) == doctest::Approx(1.0));
  CHECK(interp_linear(xs, vs, -3.0) == doctest::Approx(2.0));
  CHECK(interp_linear(xs, vs, 3.0) == doctest::Approx(4.0));
}

TEST_CASE("projection fills active cells from 1-D data") {
  ParamSet p;
  p.alpha = 0.1;
  p.epsilon = 0.2;
  const CrackedGrid grid(p, 20, 20);

  const std::vector<double> xs{-1.0, -0.5, 0.5, 1.0};
  const std::vector<double> cs{7.0, 7.0, 7.0, 7.0};
  const auto constant = project_homog_to_cracked(xs, cs, grid);
  for (double v : constant) CHECK(v == 7.0);

  std::vector<double> lin(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) lin[i] = xs[i];
  const auto ramp = project_homog_to_cracked(xs, lin, grid);
  for (int c = 0; c < grid.active_count(); ++c)
    CHECK(ramp[c] == doctest::Approx(grid.cell_x(grid.cell_i(c))).epsilon(1e-14));

  // right-side-only field leaves the left half at zero
  const std::vector<double> rx{0.1, 1.0}, rv{5.0, 5.0};
  const auto half = project_homog_to_cracked(rx, rv, grid);
  for (int c = 0; c < grid.active_count(); ++c) {
    const double x = grid.cell_x(grid.cell_i(c));
    CHECK(half[c] == (x > 0.0 ? 5.0 : 0.0));
  }

  const std::vector<double> bad{0.5, 0.5}, bv{1.0, 2.0};
  CHECK_THROWS_AS((void)project_homog_to_cracked(bad, bv, grid), Error);
}

TEST_CASE("self-comparison gives a zero error and alpha = 0 a tiny one") {
  ParamSet p;
  p.alpha = 0.1;
  p.epsilon = 0.2;
  Trajectory direct;
  direct.params = p;
  direct.grid = std::make_shared<CrackedGrid>(p, 20, 20);
  direct.snapshots.push_back({0.5, std::vector<double>(direct.grid->active_count(), 3.0)});
  Trajectory homog;
  homog.xs = {-1.0, 1.0};
  homog.snapshots.push_back({0.5, {3.0, 3.0}});
  CHECK(epsilon_error(direct, homog, 0.5).err == 0.0);

  DirectRunConfig dc;
  dc.params.alpha = 0.0;
  dc.params.epsilon = 0.2;
  dc.nx = 80;
  dc.dt = 1e-3;
  dc.t_end = 0.05;
  dc.snapshot_times = {0.05};
  const auto d2 = run_direct(dc);

  FixedPointConfig fc;
  fc.params.alpha = 0.0;
  fc.n_per_side = 40;
  fc.dt = 1e-3;
  fc.t_end = 0.05;
  fc.snapshot_times = {0.05};
  const auto h2 = run_fixed_point(fc);

  const auto e = epsilon_error(d2, h2, 0.05, true);
  CHECK(e.err <= 1e-6);
  CHECK(e.has_err_minus);
  CHECK(e.err_minus <= 1e-6);
}

TEST_CASE("energy audit passes clean runs and flags a dropped wall flux") {
  DirectRunConfig dc;
  dc.params.alpha = 0.6;
  dc.params.beta = 0.2;
  dc.params.epsilon = 0.2;
  dc.nx = 20;
  dc.dt = 1e-3;
  dc.t_end = 5e-3;
  const auto good = run_direct(dc);
  CHECK(energy_audit(good, 0.2) <= 1e-8);

  // same grid stepped with the crack walls left insulated
  const CrackedGrid grid(dc.params, 20, 10);
  const auto sys = assemble_step_system(grid, dc.dt);
  BoundaryData bd = direct_boundary_data(dc.params);
  bd.flux(FaceTag::CrackWall, 0.0);
  Trajectory broken;
  broken.params = dc.params;
  std::vector<double> u(grid.active_count(), 0.0);
  const auto mass = [&] {
    double acc = 0.0;
    for (double v : u) acc += v;
    return acc * grid.cell_area();
  };
  broken.mass_t.push_back(0.0);
  broken.mass.push_back(mass());
  for (int k = 1; k <= 5; ++k) {
    u = step(sys, u, bd);
    broken.mass_t.push_back(k * dc.dt);
    broken.mass.push_back(mass());
  }
  CHECK(energy_audit(broken, 0.2) > 1e-3);
}

TEST_CASE("column averages and spreads follow the crack geometry") {
  ParamSet p;
  p.alpha = 0.6;
  p.epsilon = 0.2;
  const CrackedGrid grid(p, 20, 10);
  const std::vector<double> ones(grid.active_count(), 1.0);
  const auto avg = y_average(grid, ones);
  const auto spr = y_spread(grid, ones);
  for (int i = 0; i < grid.nx(); ++i) {
    const bool left = grid.cell_x(i) < 0.0;
    CHECK(avg[i] == doctest::Approx(left ? 1.0 - p.alpha : 1.0).epsilon(1e-14));
    CHECK(spr[i] == 0.0);
  }

  std::vector<double> wavy(grid.active_count());
  for (int c = 0; c < grid.active_count(); ++c) {
    const double y = grid.cell_y(grid.cell_j(c));
    wavy[c] = y * y;
  }
  const auto spr2 = y_spread(grid, wavy);
  for (int i = 0; i < grid.nx(); ++i) CHECK(spr2[i] > 0.0);
}

TEST_CASE("floor fit recovers a planted slope and handles flat tables") {
  ErrorTable t;
  t.alpha = 0.1;
  t.beta = 0.0;
  t.t1 = 0.5;
  t.dt = 1e-3;
  for (double eps : {0.4, 0.2, 0.1, 0.05})
    t.rows.push_back({eps, 400, 0, 0.3 * eps + 0.001, 0.0, false});
  const auto fit = fit_error_floor(t);
  REQUIRE(fit.regime_eps.size() == 2);  // 0.1 row sits below 3x the smallest err
  CHECK(fit.slope == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(0.001).epsilon(1e-9));

  ErrorTable flat = t;
  for (auto& r : flat.rows) r.err = 0.01;
  const auto ffit = fit_error_floor(flat);
  CHECK(ffit.regime_eps.empty());
  CHECK(ffit.slope == 0.0);
  CHECK(ffit.intercept == doctest::Approx(0.01));

  ErrorTable small = t;
  small.rows.resize(2);
  CHECK_THROWS_AS((void)fit_error_floor(small), Error);
}

TEST_CASE("epsilon sweep produces a strictly decreasing deterministic table") {
  SweepConfig sc;
  sc.base.alpha = 0.1;
  sc.epsilons = {0.4, 0.2, 0.1};
  sc.nx = 40;
  sc.dt = 5e-3;
  sc.t1 = 0.1;
  sc.n_1d = 40;
  const auto a = sweep_epsilon(sc);
  REQUIRE(a.table.rows.size() == 3);
  CHECK(a.table.rows[0].err > a.table.rows[1].err);
  CHECK(a.table.rows[1].err > a.table.rows[2].err);
  for (const auto& r : a.table.rows) CHECK(r.err > 0.0);

  const auto b = sweep_epsilon(sc);
  for (std::size_t i = 0; i < a.table.rows.size(); ++i)
    CHECK(a.table.rows[i].err == b.table.rows[i].err);

  sc.epsilons = {0.4, 0.2};
  CHECK_THROWS_AS((void)sweep_epsilon(sc), Error);
  sc.epsilons = {0.1, 0.2, 0.4};
  CHECK_THROWS_AS((void)sweep_epsilon(sc), Error);
}

TEST_CASE("accelerated long run settles onto the drift") {
  // the crack makes the two sides grow at distinct rates; alpha = 0.6 would
  // miss a common-rate ansatz by O(1) at t = 5
  for (double alpha : {0.0, 0.6}) {
    FixedPointConfig fc;
    fc.params.alpha = alpha;
    fc.n_per_side = 200;
    fc.dt = 5e-3;
    fc.t_end = 5.0;
    fc.snapshot_times = {5.0};
    const auto traj = run_fixed_point(fc);
    const auto w = drift_profile(alpha);
    const auto& u = traj.snapshots.back().values;
    double worst = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i)
      worst = std::max(worst, std::abs(u[i] - w.at(traj.xs[i], 5.0)));
    CHECK(worst <= 5e-3);
  }
}
