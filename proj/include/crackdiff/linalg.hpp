#ifndef CRACKDIFF_LINALG_HPP
#define CRACKDIFF_LINALG_HPP

#include <span>
#include <vector>

namespace crackdiff {

// Symmetric 5-point (2-D) or 3-point (1-D) operator in fixed neighbor slots.
// Slot order 2-D: {x-, x+, y-, y+}; 1-D: {left, right}. Absent neighbor: index -1.
//
// multiply() accumulates each row as diag + x-neighbors + (y- + y+), with the
// two y terms grouped into their own partial sum. Addition of the grouped pair
// commutes bitwise, so fields that are mirror-symmetric in y stay bitwise
// mirror-symmetric through the solve.
class StencilMatrix {
public:
  StencilMatrix(int n, int slots) : n_(n), slots_(slots), diag_(n, 0.0),
      nb_index_(static_cast<std::size_t>(n) * slots, -1),
      nb_coef_(static_cast<std::size_t>(n) * slots, 0.0) {}

  int size() const { return n_; }
  int slots() const { return slots_; }
  double& diag(int r) { return diag_[r]; }
  double diag(int r) const { return diag_[r]; }
  void set_neighbor(int r, int slot, int index, double coef) {
    nb_index_[static_cast<std::size_t>(r) * slots_ + slot] = index;
    nb_coef_[static_cast<std::size_t>(r) * slots_ + slot] = coef;
  }
  int neighbor_index(int r, int slot) const {
    return nb_index_[static_cast<std::size_t>(r) * slots_ + slot];
  }
  double neighbor_coef(int r, int slot) const {
    return nb_coef_[static_cast<std::size_t>(r) * slots_ + slot];
  }

  void multiply(std::span<const double> x, std::span<double> y) const;
  void multiply_serial(std::span<const double> x, std::span<double> y) const;

private:
  double row_apply(int r, std::span<const double> x) const;

  int n_, slots_;
  std::vector<double> diag_;
  std::vector<int> nb_index_;
  std::vector<double> nb_coef_;
};

struct SolveReport {
  int iterations = 0;
  double rel_residual = 0.0;
  bool converged = false;
};

// Conjugate gradients with deterministic blocked reductions; x holds the
// initial guess on entry. Throws SolverDivergence past max_iter and
// NaNDetected on non-finite iterates.
SolveReport cg_solve(const StencilMatrix& A, std::span<const double> b, std::span<double> x,
                     double rtol, int max_iter, bool parallel = true);

// Tridiagonal solve (lower[i] couples row i to i-1, upper[i] to i+1); rhs is
// overwritten with the solution. No pivoting; throws SolverDivergence on a
// vanishing pivot.
void solve_tridiag(std::span<const double> lower, std::span<const double> diag,
                   std::span<const double> upper, std::span<double> rhs);

}  // namespace crackdiff

#endif
