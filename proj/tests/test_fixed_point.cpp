#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "crackdiff/errors.hpp"
#include "crackdiff/fixed_point.hpp"

using namespace crackdiff;

namespace {

struct Pair {
  IntervalGrid minus{-1.0, 0.0, 80};
  IntervalGrid plus{0.0, 1.0, 80};
  StepSystem minus_sys, plus_sys;
  std::vector<double> zm, zp;
  Pair(double dt) {
    minus_sys = assemble_step_system(minus, dt, {FaceTag::Right});
    plus_sys = assemble_step_system(plus, dt);
    zm.assign(minus.n(), 0.0);
    zp.assign(plus.n(), 0.0);
  }
  // one sweep of the interface map: huge tol makes the loop accept the first
  // evaluation, so the returned F is exactly the image of F_init
  double map_once(double F_init, double alpha, double beta) {
    FixedPointOptions opt;
    opt.tol = 1e30;
    auto res = coupled_step(minus_sys, plus_sys, minus, plus, zm, zp, F_init, alpha, beta, opt);
    REQUIRE(res.iterations == 1);
    return res.F;
  }
};

}  // namespace

TEST_CASE("flux updates alternate in sign and contract by exactly 1 - alpha") {
  Pair pr(1e-3);
  for (double alpha : {0.1, 0.3, 0.6, 0.9}) {
    const double beta = alpha / 3.0;
    const double F0 = 0.0;
    const double F1 = pr.map_once(F0, alpha, beta);
    const double F2 = pr.map_once(F1, alpha, beta);
    const double F3 = pr.map_once(F2, alpha, beta);
    const double G0 = F1 - F0, G1 = F2 - F1, G2 = F3 - F2;
    REQUIRE(std::abs(G0) > 1e-6);
    CHECK(G0 * G1 < 0.0);
    CHECK(G1 * G2 < 0.0);
    CHECK(std::abs(std::abs(G1) / std::abs(G0) - (1.0 - alpha)) <= 1e-8);
    CHECK(std::abs(std::abs(G2) / std::abs(G1) - (1.0 - alpha)) <= 1e-8);
  }
}

TEST_CASE("per-iteration ratios reported by the coupled step match 1 - alpha") {
  Pair pr(1e-3);
  for (double alpha : {0.1, 0.3, 0.6}) {
    FixedPointOptions opt;
    opt.tol = 1e-10;
    auto res =
        coupled_step(pr.minus_sys, pr.plus_sys, pr.minus, pr.plus, pr.zm, pr.zp, 0.0, alpha, 0.0,
                     opt);
    REQUIRE(res.ratios.size() >= 5);
    for (int k = 0; k < 5; ++k) CHECK(std::abs(res.ratios[k] - (1.0 - alpha)) <= 1e-8);
  }
}

TEST_CASE("closed-form extrapolation lands on the converged flux") {
  Pair pr(1e-3);
  const double alpha = 0.3;
  const double F1 = pr.map_once(0.0, alpha, 0.0);
  const double F_star = F1 / (2.0 - alpha);

  FixedPointOptions opt;
  opt.tol = 1e-12;
  auto plain =
      coupled_step(pr.minus_sys, pr.plus_sys, pr.minus, pr.plus, pr.zm, pr.zp, 0.0, alpha, 0.0,
                   opt);
  CHECK(std::abs(plain.F - F_star) <= 1e-8 * std::max(1.0, std::abs(F_star)));

  opt.accelerate = true;
  auto accel =
      coupled_step(pr.minus_sys, pr.plus_sys, pr.minus, pr.plus, pr.zm, pr.zp, 0.0, alpha, 0.0,
                   opt);
  CHECK(accel.accelerated);
  CHECK(accel.iterations <= 4);
  CHECK(std::abs(accel.F - plain.F) <= 1e-10 * std::max(1.0, std::abs(plain.F)));
  for (std::size_t i = 0; i < plain.u_minus.size(); ++i)
    CHECK(std::abs(accel.u_minus[i] - plain.u_minus[i]) <= 1e-8);
  for (std::size_t i = 0; i < plain.u_plus.size(); ++i)
    CHECK(std::abs(accel.u_plus[i] - plain.u_plus[i]) <= 1e-8);
}

TEST_CASE("more iterations are needed at small alpha, not large") {
  Pair pr(1e-3);
  FixedPointOptions opt;
  opt.tol = 1e-10;
  const auto count = [&](double alpha) {
    return coupled_step(pr.minus_sys, pr.plus_sys, pr.minus, pr.plus, pr.zm, pr.zp, 0.0, alpha,
                        0.0, opt)
        .iterations;
  };
  const int c01 = count(0.1), c09 = count(0.9);
  CHECK(c01 > 5 * c09);
}

TEST_CASE("alpha = 0 reduces to flux-1 heating of the whole interval") {
  FixedPointConfig cfg;
  cfg.params.alpha = 0.0;
  cfg.n_per_side = 50;
  cfg.dt = 1e-3;
  cfg.t_end = 2e-2;
  const auto traj = run_fixed_point(cfg);

  const IntervalGrid line(-1.0, 1.0, 2 * cfg.n_per_side);
  const auto sys = assemble_step_system(line, cfg.dt);
  BoundaryData bd;
  bd.flux(FaceTag::Left, 1.0).flux(FaceTag::Right, 0.0);
  std::vector<double> v(line.n(), 0.0);
  for (int k = 0; k < 20; ++k) v = step(sys, v, bd);

  const auto& u = traj.snapshots.back().values;
  REQUIRE(u.size() == v.size());
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(std::abs(u[i] - v[i]) <= 1e-10);
}

TEST_CASE("converged steps satisfy the transmission conditions") {
  FixedPointConfig cfg;
  cfg.params.alpha = 0.1;
  cfg.params.beta = 0.05;
  cfg.n_per_side = 80;
  cfg.dt = 1e-3;
  cfg.t_end = 5e-2;
  cfg.options.tol = 1e-10;
  const auto traj = run_fixed_point(cfg);

  const auto& rec = traj.interface_series.back();
  CHECK(std::abs(rec.u0_minus - (1.0 - cfg.params.alpha) * rec.u0_plus) <= 1e-12);
  CHECK(std::abs(rec.dxu0_minus - rec.dxu0_plus - cfg.params.beta) <=
        10.0 * cfg.options.tol * std::max(1.0, std::abs(rec.F)));

  for (std::size_t k = 1; k < traj.mass.size(); ++k) {
    const double rate = (traj.mass[k] - traj.mass[k - 1]) / cfg.dt;
    CHECK(std::abs(rate - 1.0) <= 1e-9);
  }
}

TEST_CASE("warm-started steps need fewer iterations than cold restarts") {
  FixedPointConfig cfg;
  cfg.params.alpha = 0.3;
  cfg.n_per_side = 80;
  cfg.dt = 1e-3;
  cfg.t_end = 2e-2;
  const auto warm = run_fixed_point(cfg);
  cfg.warm_start = false;
  const auto cold = run_fixed_point(cfg);
  // plain iteration is geometric, so the saving is logarithmic in the gap:
  // real but modest per step
  CHECK(warm.total_solver_iterations < cold.total_solver_iterations);
  const auto& s = warm.interface_series;
  REQUIRE(s.size() == 20);
  CHECK(s.back().iterations < s[0].iterations);
}

TEST_CASE("mismatched subdomain grids are rejected") {
  IntervalGrid gm(-1.0, 0.0, 40), gp(0.0, 1.0, 50);
  const auto sm = assemble_step_system(gm, 1e-3, {FaceTag::Right});
  const auto sp = assemble_step_system(gp, 1e-3);
  std::vector<double> zm(40, 0.0), zp(50, 0.0);
  CHECK_THROWS_AS((void)coupled_step(sm, sp, gm, gp, zm, zp, 0.0, 0.1, 0.0, {}), Error);
}
