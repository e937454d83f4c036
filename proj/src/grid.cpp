#include "crackdiff/grid.hpp"

#include <cmath>
#include <cstdio>

#include "crackdiff/errors.hpp"
#include "json.hpp"

namespace crackdiff {

const char* face_tag_name(FaceTag t) {
  switch (t) {
    case FaceTag::Outer: return "outer";
    case FaceTag::Heated: return "heated";
    case FaceTag::CrackWall: return "crack_wall";
    case FaceTag::CrackTip: return "crack_tip";
    case FaceTag::Left: return "left";
    case FaceTag::Right: return "right";
  }
  return "?";
}

CrackedGrid::CrackedGrid(const ParamSet& params, int nx, int ny) {
  validate_params(params);
  if (nx < 2 || ny < 2) fail(ErrorCode::EmptyGrid, "nx and ny must be >= 2");
  if (nx % 2 != 0) fail(ErrorCode::OddCellCount, "nx must be even so x = 0 is a face");
  if (ny % 2 != 0) fail(ErrorCode::OddCellCount, "ny must be even so y = 0 is a face");

  nx_ = nx;
  ny_ = ny;
  eps_ = params.epsilon;
  alpha_ = params.alpha;
  hx_ = 2.0 / nx;
  hy_ = eps_ / ny;

  // crack walls must coincide with y-faces: alpha*ny/2 must be an integer
  const double rows = alpha_ * ny / 2.0;
  half_crack_ = static_cast<int>(std::lround(rows));
  if (std::abs(rows - half_crack_) > 1e-9 * std::max(1.0, static_cast<double>(ny))) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "alpha*ny/2 = %.12g is not an integer (ny = %d)", rows, ny);
    fail(ErrorCode::AlignmentError, buf);
  }

  const int j_lo = ny / 2 - half_crack_;  // first crack row
  const int j_hi = ny / 2 + half_crack_;  // one past last crack row
  cell_id_.assign(static_cast<std::size_t>(nx) * ny, -1);
  for (int i = 0; i < nx; ++i) {
    const bool crack_col = i < nx / 2;
    for (int j = 0; j < ny; ++j) {
      if (crack_col && j >= j_lo && j < j_hi) continue;
      cell_id_[idx(i, j)] = active_count_++;
      cell_ij_.emplace_back(i, j);
    }
  }
  if (active_count_ == 0) fail(ErrorCode::EmptyGrid, "no active cells");

  // boundary faces, in a fixed deterministic order
  for (int j = 0; j < ny; ++j)  // x = -1, material rows only
    if (is_active(0, j))
      faces_.push_back({cell(0, j), FaceTag::Heated, hy_, -1.0, cell_y(j)});
  for (int j = 0; j < ny; ++j)  // x = +1
    faces_.push_back({cell(nx - 1, j), FaceTag::Outer, hy_, 1.0, cell_y(j)});
  if (half_crack_ > 0) {
    const double y_wall_lo = -0.5 * alpha_ * eps_;
    const double y_wall_hi = 0.5 * alpha_ * eps_;
    for (int i = 0; i < nx / 2; ++i) {
      // material cell under the lower wall, face on its +y side
      faces_.push_back({cell(i, j_lo - 1), FaceTag::CrackWall, hx_, cell_x(i), y_wall_lo});
      // material cell above the upper wall, face on its -y side
      faces_.push_back({cell(i, j_hi), FaceTag::CrackWall, hx_, cell_x(i), y_wall_hi});
    }
    for (int j = j_lo; j < j_hi; ++j)  // crack tip: -x face of the first column right of x = 0
      faces_.push_back({cell(nx / 2, j), FaceTag::CrackTip, hy_, 0.0, cell_y(j)});
  }
}

int CrackedGrid::mirror_cell(int c) const {
  const auto [i, j] = cell_ij_[c];
  const int id = cell_id_[idx(i, ny_ - 1 - j)];
  if (id < 0) fail(ErrorCode::DomainMismatch, "mirror of an active cell must be active");
  return id;
}

double CrackedGrid::tagged_measure(FaceTag t) const {
  double s = 0.0;
  for (const auto& f : faces_)
    if (f.tag == t) s += f.measure;
  return s;
}

int CrackedGrid::tagged_count(FaceTag t) const {
  int c = 0;
  for (const auto& f : faces_)
    if (f.tag == t) ++c;
  return c;
}

std::string CrackedGrid::summary_json() const {
  nlohmann::json j;
  j["nx"] = nx_;
  j["ny"] = ny_;
  j["hx"] = hx_;
  j["hy"] = hy_;
  j["epsilon"] = eps_;
  j["alpha"] = alpha_;
  j["half_crack_rows"] = half_crack_;
  j["active_cells"] = active_count_;
  j["active_area"] = active_area();
  for (FaceTag t : {FaceTag::Heated, FaceTag::Outer, FaceTag::CrackWall, FaceTag::CrackTip}) {
    j["faces"][face_tag_name(t)]["count"] = tagged_count(t);
    j["faces"][face_tag_name(t)]["measure"] = tagged_measure(t);
  }
  return j.dump(2);
}

IntervalGrid::IntervalGrid(double a, double b, int n, Layout layout)
    : a_(a), b_(b), n_(n), layout_(layout) {
  if (!(b > a)) fail(ErrorCode::DegenerateInterval, "interval must have b > a");
  if (n < 1) fail(ErrorCode::EmptyGrid, "interval grid needs n >= 1 cells");
  h_ = (b - a) / n;
}

}  // namespace crackdiff
