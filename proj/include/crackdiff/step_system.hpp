#ifndef CRACKDIFF_STEP_SYSTEM_HPP
#define CRACKDIFF_STEP_SYSTEM_HPP

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "crackdiff/grid.hpp"
#include "crackdiff/linalg.hpp"

namespace crackdiff {

constexpr int kNumFaceTags = 6;
inline int tag_index(FaceTag t) { return static_cast<int>(t); }

// Boundary values for one implicit step: an influx density per Neumann tag
// (constant or a function of the face center) and a value per Dirichlet tag.
class BoundaryData {
public:
  BoundaryData& flux(FaceTag t, double q) {
    flux_fn_[tag_index(t)] = nullptr;
    flux_const_[tag_index(t)] = q;
    return *this;
  }
  BoundaryData& flux(FaceTag t, std::function<double(double, double)> q) {
    flux_fn_[tag_index(t)] = std::move(q);
    return *this;
  }
  BoundaryData& dirichlet(FaceTag t, double g) {
    dirichlet_[tag_index(t)] = g;
    return *this;
  }

  double flux_at(FaceTag t, double x, double y) const {
    const int k = tag_index(t);
    return flux_fn_[k] ? flux_fn_[k](x, y) : flux_const_[k];
  }
  std::optional<double> dirichlet_value(FaceTag t) const { return dirichlet_[tag_index(t)]; }

private:
  std::array<double, kNumFaceTags> flux_const_{};
  std::array<std::function<double(double, double)>, kNumFaceTags> flux_fn_{};
  std::array<std::optional<double>, kNumFaceTags> dirichlet_{};
};

// One backward-Euler step operator (M/dt + A) for a fixed grid and dt.
// Dirichlet tags are baked into the matrix at assembly via the half-cell
// closure: the adjacent diagonal gains 2/h * face_measure and the rhs gains
// the same factor times the boundary value.
struct StepSystem {
  StencilMatrix matrix{0, 2};
  double dt = 0.0;
  std::vector<double> mass;                  // per-cell volume
  std::vector<BoundaryFace> neumann_faces;   // influx * measure lands on the rhs
  struct DirichletFace {
    int cell;
    FaceTag tag;
    double coef;  // 2 * measure / h
  };
  std::vector<DirichletFace> dirichlet_faces;
  // linear solver knobs (2-D path)
  double cg_rtol = 1e-10;
  bool parallel = true;
};

StepSystem assemble_step_system(const CrackedGrid& grid, double dt);
StepSystem assemble_step_system(const IntervalGrid& grid, double dt,
                                const std::vector<FaceTag>& dirichlet_tags = {});

// Advances one implicit step. source is a per-cell rate (empty = zero).
// guess seeds the iterative solve (2-D); defaults to prev.
std::vector<double> step(const StepSystem& sys, std::span<const double> prev,
                         const BoundaryData& bd, std::span<const double> source = {},
                         SolveReport* report = nullptr, std::span<const double> guess = {});

// Face value reconstruction at an interval end from the cell value and the
// prescribed outward-normal derivative q; exact for affine fields.
double face_trace(const IntervalGrid& grid, std::span<const double> values, FaceTag end, double q);

// One-sided d/dx at an interval end holding the Dirichlet value g; exact for
// affine fields.
double face_flux_dirichlet(const IntervalGrid& grid, std::span<const double> values, FaceTag end,
                           double g);

}  // namespace crackdiff

#endif
