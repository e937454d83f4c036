#include "crackdiff/linalg.hpp"

#include <cmath>
#include <cstdio>

#include "crackdiff/errors.hpp"
#include "crackdiff/kernels.hpp"

namespace crackdiff {

double StencilMatrix::row_apply(int r, std::span<const double> x) const {
  const std::size_t base = static_cast<std::size_t>(r) * slots_;
  double acc = diag_[r] * x[r];
  if (slots_ == 2) {
    const int l = nb_index_[base], rr = nb_index_[base + 1];
    if (l >= 0) acc += nb_coef_[base] * x[l];
    if (rr >= 0) acc += nb_coef_[base + 1] * x[rr];
    return acc;
  }
  const int w = nb_index_[base], e = nb_index_[base + 1];
  const int s = nb_index_[base + 2], n = nb_index_[base + 3];
  if (w >= 0) acc += nb_coef_[base] * x[w];
  if (e >= 0) acc += nb_coef_[base + 1] * x[e];
  // grouped y pair, see class comment
  double ypair = 0.0;
  if (s >= 0) ypair += nb_coef_[base + 2] * x[s];
  if (n >= 0) ypair += nb_coef_[base + 3] * x[n];
  return acc + ypair;
}

void StencilMatrix::multiply(std::span<const double> x, std::span<double> y) const {
#pragma omp parallel for schedule(static)
  for (int r = 0; r < n_; ++r) y[r] = row_apply(r, x);
}

void StencilMatrix::multiply_serial(std::span<const double> x, std::span<double> y) const {
  for (int r = 0; r < n_; ++r) y[r] = row_apply(r, x);
}

SolveReport cg_solve(const StencilMatrix& A, std::span<const double> b, std::span<double> x,
                     double rtol, int max_iter, bool parallel) {
  namespace k = kernels;
  const int n = A.size();
  std::vector<double> r(n), p(n), Ap(n);

  const auto mv = [&](std::span<const double> in, std::span<double> out) {
    if (parallel)
      A.multiply(in, out);
    else
      A.multiply_serial(in, out);
  };
  const auto dot = parallel ? k::dot : k::dot_serial;
  const auto axpy = parallel ? k::axpy : k::axpy_serial;
  const auto xpay = parallel ? k::xpay : k::xpay_serial;

  const double bnorm2 = dot(b, b);
  if (bnorm2 == 0.0) {
    std::fill(x.begin(), x.end(), 0.0);
    return {0, 0.0, true};
  }
  const double stop2 = rtol * rtol * bnorm2;

  // recompute r = b - A x from scratch and restart the search direction;
  // the beta recurrence may only combine residuals from one recurrence,
  // so every refresh must also reset p
  const auto refresh = [&] {
    mv(x, Ap);
    for (int i = 0; i < n; ++i) r[i] = b[i] - Ap[i];
    std::copy(r.begin(), r.end(), p.begin());
    return dot(r, r);
  };

  double rs = refresh();
  bool fresh = true;  // r currently equals the true residual

  SolveReport rep;
  while (true) {
    if (rs <= stop2) {
      // the recursive residual can drift below the true one; only a fresh
      // residual may certify convergence
      if (fresh) break;
      rs = refresh();
      fresh = true;
      continue;
    }
    if (rep.iterations >= max_iter) {
      rep.rel_residual = std::sqrt(rs / bnorm2);
      char buf[128];
      std::snprintf(buf, sizeof buf, "cg stalled at rel residual %.3e after %d iterations",
                    rep.rel_residual, rep.iterations);
      fail(ErrorCode::SolverDivergence, buf);
    }
    mv(p, Ap);
    const double pAp = dot(p, Ap);
    if (!(pAp > 0.0)) fail(ErrorCode::SolverDivergence, "matrix not positive definite in cg");
    const double alpha = rs / pAp;
    axpy(alpha, p, x);
    ++rep.iterations;
    double rs_new;
    if (rep.iterations % 200 == 0) {
      rs_new = refresh();
      fresh = true;
    } else {
      axpy(-alpha, Ap, r);
      rs_new = dot(r, r);
      xpay(r, rs_new / rs, p);
      fresh = false;
    }
    if (!std::isfinite(rs_new)) fail(ErrorCode::NaNDetected, "non-finite residual in cg");
    rs = rs_new;
  }
  rep.rel_residual = std::sqrt(rs / bnorm2);
  rep.converged = true;
  return rep;
}

void solve_tridiag(std::span<const double> lower, std::span<const double> diag,
                   std::span<const double> upper, std::span<double> rhs) {
  const std::size_t n = diag.size();
  std::vector<double> c(n), d(n);
  double piv = diag[0];
  if (std::abs(piv) < 1e-300) fail(ErrorCode::SolverDivergence, "zero pivot in tridiagonal solve");
  c[0] = upper[0] / piv;
  d[0] = rhs[0] / piv;
  for (std::size_t i = 1; i < n; ++i) {
    piv = diag[i] - lower[i] * c[i - 1];
    if (std::abs(piv) < 1e-300) fail(ErrorCode::SolverDivergence, "zero pivot in tridiagonal solve");
    c[i] = upper[i] / piv;
    d[i] = (rhs[i] - lower[i] * d[i - 1]) / piv;
  }
  rhs[n - 1] = d[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] = d[i] - c[i] * rhs[i + 1];
}

}  // namespace crackdiff
