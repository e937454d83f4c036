// Serial vs OpenMP timing for the hot kernels: stencil matvec, blocked dot,
// axpy, and a full implicit step on a representative cracked grid.
#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "crackdiff/kernels.hpp"
#include "crackdiff/step_system.hpp"

using namespace crackdiff;

namespace {

StepSystem make_system() {
  ParamSet p;
  p.alpha = 0.1;
  p.epsilon = 0.2;
  static CrackedGrid grid(p, 512, 100);
  return assemble_step_system(grid, 1e-3);
}

std::vector<double> random_vector(std::size_t n) {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = dist(rng);
  return v;
}

void bm_matvec_omp(benchmark::State& state) {
  const auto sys = make_system();
  const auto x = random_vector(sys.matrix.size());
  std::vector<double> y(x.size());
  for (auto _ : state) {
    sys.matrix.multiply(x, y);
    benchmark::DoNotOptimize(y.data());
  }
}

void bm_matvec_serial(benchmark::State& state) {
  const auto sys = make_system();
  const auto x = random_vector(sys.matrix.size());
  std::vector<double> y(x.size());
  for (auto _ : state) {
    sys.matrix.multiply_serial(x, y);
    benchmark::DoNotOptimize(y.data());
  }
}

void bm_dot_omp(benchmark::State& state) {
  const auto a = random_vector(1 << 20);
  const auto b = random_vector(1 << 20);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::dot(a, b));
}

void bm_dot_serial(benchmark::State& state) {
  const auto a = random_vector(1 << 20);
  const auto b = random_vector(1 << 20);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::dot_serial(a, b));
}

void bm_axpy_omp(benchmark::State& state) {
  const auto x = random_vector(1 << 20);
  auto y = random_vector(1 << 20);
  for (auto _ : state) {
    kernels::axpy(0.5, x, y);
    benchmark::DoNotOptimize(y.data());
  }
}

void bm_axpy_serial(benchmark::State& state) {
  const auto x = random_vector(1 << 20);
  auto y = random_vector(1 << 20);
  for (auto _ : state) {
    kernels::axpy_serial(0.5, x, y);
    benchmark::DoNotOptimize(y.data());
  }
}

void bm_step(benchmark::State& state, bool parallel) {
  auto sys = make_system();
  sys.parallel = parallel;
  BoundaryData bd;
  bd.flux(FaceTag::Heated, 1.0)
      .flux(FaceTag::Outer, 0.0)
      .flux(FaceTag::CrackWall, 0.01)
      .flux(FaceTag::CrackTip, 0.0);
  std::vector<double> u(sys.matrix.size(), 0.0);
  for (auto _ : state) {
    u = step(sys, u, bd);
    benchmark::DoNotOptimize(u.data());
  }
}

void bm_step_omp(benchmark::State& state) { bm_step(state, true); }
void bm_step_serial(benchmark::State& state) { bm_step(state, false); }

}  // namespace

BENCHMARK(bm_matvec_omp);
BENCHMARK(bm_matvec_serial);
BENCHMARK(bm_dot_omp);
BENCHMARK(bm_dot_serial);
BENCHMARK(bm_axpy_omp);
BENCHMARK(bm_axpy_serial);
BENCHMARK(bm_step_omp)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_step_serial)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
