// Benchmark of the OpenMP kernels against the serial reference path, plus
// one full pipeline run in both modes.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>

#include "janglab/calculus.hpp"
#include "janglab/flat_distance.hpp"
#include "janglab/generators.hpp"
#include "janglab/kernels.hpp"

using namespace janglab;
using clock_type = std::chrono::steady_clock;

namespace {

double time_ms(const std::function<void()>& fn, int reps) {
  fn();  // warm up
  const auto t0 = clock_type::now();
  for (int i = 0; i < reps; ++i) fn();
  const auto t1 = clock_type::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

void row(const char* name, double serial_ms, double parallel_ms) {
  std::printf("%-28s %10.3f ms %10.3f ms %8.2fx\n", name, serial_ms, parallel_ms,
              serial_ms / parallel_ms);
}

}  // namespace

int main() {
  const std::size_t n = 1 << 20;
  auto grid = RadialGrid::geometric(0.5, 1e4, n);
  auto p = RadialProfile::tabulate(grid, [](double r) { return std::sin(r) / (1 + r); });

  std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "openmp", "speedup");

  auto bench = [&](const char* name, const std::function<void()>& fn, int reps) {
    kernels::set_parallel(false);
    const double s = time_ms(fn, reps);
    kernels::set_parallel(true);
    const double q = time_ms(fn, reps);
    row(name, s, q);
  };

  bench("derivative (1M pts)", [&] { derivative(p, 1); }, 5);
  bench("second derivative (1M pts)", [&] { derivative(p, 2); }, 5);
  bench("cumulative integral", [&] { integrate_from(p, 1.0); }, 5);
  auto fine = RadialGrid::geometric(0.5, 1e4, n + 1);
  bench("resample (1M pts)", [&] { resample(p, fine); }, 5);

  const InitialData d = schwarzschild_slice(0.01, 3, 8192);
  bench(
      "full bound pipeline (8k)",
      [&] {
        const JangSolution sol = solve_jang_ode(d);
        const JangMetric jm = jang_metric(d, sol);
        const ConformalData cd = conformal_factor(jm);
        optimize_cut(jm, cd, 4.0 * M_PI, 2.0);
      },
      1);
  return 0;
}
