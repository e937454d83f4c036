#ifndef CRACKDIFF_KERNELS_HPP
#define CRACKDIFF_KERNELS_HPP

#include <cstddef>
#include <span>

// Vector kernels used by the linear solvers and the field diagnostics.
//
// Reductions are blocked: fixed-size chunks are summed independently and the
// partials are combined in chunk order. The result is therefore independent of
// the number of OpenMP threads, which keeps reruns byte-identical.
// The *_serial variants are plain loops kept as a reference for tests and for
// the kernel benchmark.

namespace crackdiff::kernels {

inline constexpr std::size_t kBlock = 4096;

double dot(std::span<const double> a, std::span<const double> b);
double dot_serial(std::span<const double> a, std::span<const double> b);

double sum(std::span<const double> a);
double sum_serial(std::span<const double> a);

// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void axpy_serial(double alpha, std::span<const double> x, std::span<double> y);

// p = r + beta * p
void xpay(std::span<const double> r, double beta, std::span<double> p);
void xpay_serial(std::span<const double> r, double beta, std::span<double> p);

}  // namespace crackdiff::kernels

#endif
