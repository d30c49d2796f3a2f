#ifndef JANGLAB_KERNELS_HPP_
#define JANGLAB_KERNELS_HPP_

#include <cstddef>
#include <span>

namespace janglab::kernels {

// All kernels come in a serial reference form and an OpenMP form with
// identical arithmetic order, so results are bitwise equal for any thread
// count.  The parallel path is the default; tests and the benchmark flip it.
bool parallel_enabled() noexcept;
void set_parallel(bool on) noexcept;

// Fornberg finite-difference weights for the m-th derivative at x0 from the
// nodes x (exact for polynomials up to degree x.size()-1).
void fd_weights(double x0, std::span<const double> x, int m, std::span<double> w);

// d^order y / dx^order on a nonuniform grid.  Sliding centered stencils of
// 5 points (order 1) or 7 points (order 2); one-sided at the ends.
void derivative(std::span<const double> x, std::span<const double> y, int order,
                std::span<double> out);

// Integrals of the local cubic interpolant over each interval,
// w[i] = \int_{x[i]}^{x[i+1]} y dx, locally O(h^5).
void interval_weights(std::span<const double> x, std::span<const double> y,
                      std::span<double> w);

// out[i] = \int_{x[0]}^{x[i]} y dx via blocked prefix sums over the interval
// weights.  Block boundaries are fixed, independent of thread count.
void cumulative_integral(std::span<const double> x, std::span<const double> y,
                         std::span<double> out);

// Batch evaluation of the local 4-point cubic interpolant of (x, y) at the
// query points q (each q must lie within [x.front(), x.back()]).
void eval_cubic_many(std::span<const double> x, std::span<const double> y,
                     std::span<const double> q, std::span<double> out);

double reduce_min(std::span<const double> v);
double reduce_max(std::span<const double> v);

}  // namespace janglab::kernels

#endif  // JANGLAB_KERNELS_HPP_
