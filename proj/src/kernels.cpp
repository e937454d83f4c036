#include "crackdiff/kernels.hpp"

#include <cassert>
#include <vector>

namespace crackdiff::kernels {

namespace {

// Per-block partial sums, combined serially in block order afterwards.
template <class BlockOp>
double blocked_reduce(std::size_t n, BlockOp op) {
  const std::size_t nblocks = (n + kBlock - 1) / kBlock;
  std::vector<double> partial(nblocks, 0.0);
#pragma omp parallel for schedule(static)
  for (long long bi = 0; bi < static_cast<long long>(nblocks); ++bi) {
    const std::size_t b = static_cast<std::size_t>(bi);
    const std::size_t lo = b * kBlock;
    const std::size_t hi = lo + kBlock < n ? lo + kBlock : n;
    partial[b] = op(lo, hi);
  }
  double acc = 0.0;
  for (double p : partial) acc += p;
  return acc;
}

}  // namespace

double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  return blocked_reduce(a.size(), [&](std::size_t lo, std::size_t hi) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += a[i] * b[i];
    return s;
  });
}

double dot_serial(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double sum(std::span<const double> a) {
  return blocked_reduce(a.size(), [&](std::size_t lo, std::size_t hi) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += a[i];
    return s;
  });
}

double sum_serial(std::span<const double> a) {
  double s = 0.0;
  for (double v : a) s += v;
  return s;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  const long long n = static_cast<long long>(x.size());
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void axpy_serial(double alpha, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

void xpay(std::span<const double> r, double beta, std::span<double> p) {
  assert(r.size() == p.size());
  const long long n = static_cast<long long>(r.size());
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
}

void xpay_serial(std::span<const double> r, double beta, std::span<double> p) {
  assert(r.size() == p.size());
  for (std::size_t i = 0; i < r.size(); ++i) p[i] = r[i] + beta * p[i];
}

}  // namespace crackdiff::kernels
