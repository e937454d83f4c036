#ifndef CRACKDIFF_GRID_HPP
#define CRACKDIFF_GRID_HPP

#include <string>
#include <vector>

#include "crackdiff/params.hpp"

namespace crackdiff {

// Boundary pieces of the cracked period cell, plus the 1-D interval ends.
enum class FaceTag {
  Outer,      // x = 1, insulated
  Heated,     // x = -1, material part, unit influx
  CrackWall,  // y = +-alpha*eps/2 for -1 < x < 0
  CrackTip,   // x = 0, |y| < alpha*eps/2
  Left,       // 1-D interval, left end
  Right,      // 1-D interval, right end
};

const char* face_tag_name(FaceTag t);

struct BoundaryFace {
  int cell;        // compact active-cell index the face belongs to
  FaceTag tag;
  double measure;  // face length (2-D) or 1 (1-D)
  double x, y;     // face-center coordinates
};

// Uniform rectilinear grid on the period cell [-1,1] x [-eps/2, eps/2],
// periodic in y, with the crack cells (-1 < x < 0, |y| < alpha*eps/2)
// deactivated. nx and ny even; crack walls must land on y-faces.
class CrackedGrid {
public:
  CrackedGrid(const ParamSet& params, int nx, int ny);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double hx() const { return hx_; }
  double hy() const { return hy_; }
  double epsilon() const { return eps_; }
  double alpha() const { return alpha_; }
  int half_crack_rows() const { return half_crack_; }

  int active_count() const { return active_count_; }
  double cell_area() const { return hx_ * hy_; }
  double active_area() const { return cell_area() * active_count_; }

  bool is_active(int i, int j) const { return cell_id_[idx(i, j)] >= 0; }
  // compact index of cell (i, j), -1 for crack cells
  int cell(int i, int j) const { return cell_id_[idx(i, j)]; }
  int cell_i(int c) const { return cell_ij_[c].first; }
  int cell_j(int c) const { return cell_ij_[c].second; }
  double cell_x(int i) const { return -1.0 + (i + 0.5) * hx_; }
  double cell_y(int j) const { return -0.5 * eps_ + (j + 0.5) * hy_; }

  // compact index of the cell mirrored across y = 0 (always active)
  int mirror_cell(int c) const;

  const std::vector<BoundaryFace>& boundary_faces() const { return faces_; }
  // summed face measure for one tag
  double tagged_measure(FaceTag t) const;
  int tagged_count(FaceTag t) const;

  std::string summary_json() const;

private:
  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * ny_ + j; }

  int nx_, ny_, half_crack_;
  double hx_, hy_, eps_, alpha_;
  int active_count_ = 0;
  std::vector<int> cell_id_;                    // nx*ny, -1 for crack cells
  std::vector<std::pair<int, int>> cell_ij_;    // compact -> (i, j)
  std::vector<BoundaryFace> faces_;
};

enum class Layout { CellCenter, VertexP1 };

// Uniform grid on [a, b] with n cells; dof positions depend on the layout.
class IntervalGrid {
public:
  IntervalGrid(double a, double b, int n, Layout layout = Layout::CellCenter);

  double a() const { return a_; }
  double b() const { return b_; }
  int n() const { return n_; }
  double h() const { return h_; }
  Layout layout() const { return layout_; }

  // number of unknowns: n for cell-centered, n+1 for vertex P1
  int dof_count() const { return layout_ == Layout::CellCenter ? n_ : n_ + 1; }
  double dof_x(int k) const {
    return layout_ == Layout::CellCenter ? a_ + (k + 0.5) * h_ : a_ + k * h_;
  }

private:
  double a_, b_, h_;
  int n_;
  Layout layout_;
};

}  // namespace crackdiff

#endif
