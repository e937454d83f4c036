#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "crackdiff/errors.hpp"
#include "crackdiff/grid.hpp"
#include "crackdiff/params.hpp"

using namespace crackdiff;

namespace {
bool throws_code(ErrorCode want, const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code() == want;
  }
  return false;
}
}  // namespace

TEST_CASE("parameter bounds are enforced") {
  ParamSet p;
  CHECK_NOTHROW(validate_params(p));

  p.alpha = 1.0;
  CHECK(throws_code(ErrorCode::OutOfRange, [&] { validate_params(p); }));
  p.alpha = -0.1;
  CHECK(throws_code(ErrorCode::OutOfRange, [&] { validate_params(p); }));

  p = ParamSet{};
  p.beta = 0.1;  // beta must stay below alpha
  CHECK(throws_code(ErrorCode::OutOfRange, [&] { validate_params(p); }));

  p = ParamSet{};
  p.alpha = 0.0;
  p.beta = 0.0;
  CHECK_NOTHROW(validate_params(p));
  p.beta = 0.01;
  CHECK(throws_code(ErrorCode::OutOfRange, [&] { validate_params(p); }));

  p = ParamSet{};
  p.epsilon = 0.0;
  CHECK(throws_code(ErrorCode::OutOfRange, [&] { validate_params(p); }));
  p.epsilon = 1.5;
  CHECK(throws_code(ErrorCode::OutOfRange, [&] { validate_params(p); }));
}

TEST_CASE("profile mode validation") {
  ParamSet p;
  p.alpha = 0.1;
  p.wall_flux_mode = WallFluxMode::Profile;
  CHECK_NOTHROW(validate_params(p));  // builtin linear profile integrates to alpha/2

  p.beta = 0.05;
  CHECK(throws_code(ErrorCode::InconsistentMode, [&] { validate_params(p); }));

  p.beta = 0.0;
  p.profile_id = "tabulated";
  p.profile_table = {{-1.0, 0.2}, {0.0, 0.2}};  // integral 0.2 != alpha/2
  CHECK(throws_code(ErrorCode::ProfileMassMismatch, [&] { validate_params(p); }));

  p.profile_table = {{-1.0, 0.1}, {0.0, 0.0}};  // integral alpha/2 = 0.05
  CHECK_NOTHROW(validate_params(p));

  const auto f = resolve_profile(p);
  CHECK(f.integral() == doctest::Approx(0.05).epsilon(1e-14));
  CHECK(f(-0.5) == doctest::Approx(0.05));
}

TEST_CASE("linear wall profile") {
  const auto f = WallFluxProfile::linear(0.3);
  CHECK(f(-1.0) == doctest::Approx(0.3));
  CHECK(f(-0.25) == doctest::Approx(0.075));
  CHECK(f.at_zero() == 0.0);
  CHECK(f.integral() == doctest::Approx(0.15).epsilon(1e-15));
}

TEST_CASE("cracked grid alignment and cell bookkeeping") {
  ParamSet p;
  p.alpha = 0.1;
  p.epsilon = 0.2;
  CrackedGrid g(p, 40, 20);

  CHECK(g.hx() == doctest::Approx(0.05));
  CHECK(g.hy() == doctest::Approx(0.01));
  CHECK(g.half_crack_rows() == 1);
  CHECK(g.active_count() == 40 * 20 - 20 * 2);
  CHECK(g.active_area() == doctest::Approx((2.0 - p.alpha) * p.epsilon).epsilon(1e-14));

  // crack cells are the two middle rows of the left half
  CHECK_FALSE(g.is_active(0, 9));
  CHECK_FALSE(g.is_active(19, 10));
  CHECK(g.is_active(20, 9));  // right of the tip everything is material
  CHECK(g.is_active(0, 8));

  ParamSet p6;
  p6.alpha = 0.6;
  p6.epsilon = 0.2;
  CrackedGrid g6(p6, 10, 10);
  CHECK(g6.half_crack_rows() == 3);
}

TEST_CASE("grid construction rejects bad shapes") {
  ParamSet p;
  p.alpha = 0.1;
  CHECK(throws_code(ErrorCode::OddCellCount, [&] { CrackedGrid(p, 41, 20); }));
  CHECK(throws_code(ErrorCode::OddCellCount, [&] { CrackedGrid(p, 40, 15); }));
  CHECK(throws_code(ErrorCode::AlignmentError, [&] { CrackedGrid(p, 40, 10); }));
  CHECK(throws_code(ErrorCode::EmptyGrid, [&] { CrackedGrid(p, 0, 20); }));
}

TEST_CASE("tagged boundary measures reproduce the closed forms") {
  for (double alpha : {0.1, 0.3, 0.6}) {
    for (double beta : {0.0, alpha / 3.0}) {
      ParamSet p;
      p.alpha = alpha;
      p.beta = beta;
      p.epsilon = 0.4;
      CrackedGrid g(p, 20, 40);
      const double eps = p.epsilon;
      CHECK(g.tagged_measure(FaceTag::Heated) == doctest::Approx((1 - alpha) * eps).epsilon(1e-13));
      CHECK(g.tagged_measure(FaceTag::CrackWall) == doctest::Approx(2.0).epsilon(1e-13));
      CHECK(g.tagged_measure(FaceTag::CrackTip) == doctest::Approx(alpha * eps).epsilon(1e-13));
      CHECK(g.tagged_measure(FaceTag::Outer) == doctest::Approx(eps).epsilon(1e-13));
      // total influx with the standard data equals epsilon
      const double total = g.tagged_measure(FaceTag::Heated) * 1.0 +
                           g.tagged_measure(FaceTag::CrackWall) * (alpha - beta) * eps / 2.0 +
                           (alpha > 0 ? g.tagged_measure(FaceTag::CrackTip) * beta / alpha : 0.0);
      CHECK(total == doctest::Approx(eps).epsilon(1e-12));
    }
  }
}

TEST_CASE("alpha = 0 gives an uncracked grid") {
  ParamSet p;
  p.alpha = 0.0;
  p.epsilon = 0.5;
  CrackedGrid g(p, 8, 4);
  CHECK(g.active_count() == 32);
  CHECK(g.tagged_count(FaceTag::CrackWall) == 0);
  CHECK(g.tagged_count(FaceTag::CrackTip) == 0);
  CHECK(g.tagged_measure(FaceTag::Heated) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("mirror indexing pairs cells across y = 0") {
  ParamSet p;
  p.alpha = 0.2;
  p.epsilon = 0.2;
  CrackedGrid g(p, 8, 10);
  for (int c = 0; c < g.active_count(); ++c) {
    const int m = g.mirror_cell(c);
    CHECK(g.cell_i(m) == g.cell_i(c));
    CHECK(g.cell_y(g.cell_j(m)) == doctest::Approx(-g.cell_y(g.cell_j(c))).epsilon(1e-14));
    CHECK(g.mirror_cell(m) == c);
  }
}

TEST_CASE("rebuilding a grid from the same inputs is bit-identical") {
  ParamSet p;
  p.alpha = 0.3;
  p.epsilon = 0.4;
  CrackedGrid a(p, 20, 20), b(p, 20, 20);
  CHECK(a.summary_json() == b.summary_json());
  REQUIRE(a.active_count() == b.active_count());
  for (int c = 0; c < a.active_count(); ++c) {
    CHECK(a.cell_i(c) == b.cell_i(c));
    CHECK(a.cell_j(c) == b.cell_j(c));
  }
}

TEST_CASE("interval grid layouts and errors") {
  IntervalGrid cells(-1.0, 0.0, 10);
  CHECK(cells.dof_count() == 10);
  CHECK(cells.dof_x(0) == doctest::Approx(-0.95));
  IntervalGrid verts(-1.0, 1.0, 10, Layout::VertexP1);
  CHECK(verts.dof_count() == 11);
  CHECK(verts.dof_x(5) == doctest::Approx(0.0));
  CHECK(throws_code(ErrorCode::DegenerateInterval, [] { IntervalGrid(1.0, 1.0, 4); }));
  CHECK(throws_code(ErrorCode::EmptyGrid, [] { IntervalGrid(0.0, 1.0, 0); }));
}
