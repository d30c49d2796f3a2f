#include "janglab/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <vector>

#include "janglab/errors.hpp"

namespace janglab::kernels {

namespace {

std::atomic<bool> g_parallel{true};

// Small arrays are not worth a team launch.
constexpr std::size_t kParGrain = 512;

// Lagrange interpolation through m nodes, evaluated at q.
inline double lagrange_eval(const double* xs, const double* ys, int m, double q) {
  double acc = 0.0;
  for (int j = 0; j < m; ++j) {
    double lj = 1.0;
    for (int k = 0; k < m; ++k) {
      if (k == j) continue;
      lj *= (q - xs[k]) / (xs[j] - xs[k]);
    }
    acc += ys[j] * lj;
  }
  return acc;
}

inline std::size_t locate_sorted(std::span<const double> x, double q) {
  auto it = std::upper_bound(x.begin(), x.end(), q);
  std::size_t i = static_cast<std::size_t>(it - x.begin());
  if (i > 0) --i;
  if (i >= x.size() - 1) i = x.size() - 2;
  return i;
}

// Integral of the 4-point local cubic over one interval by 2-point
// Gauss-Legendre, which is exact for cubics.
inline double interval_weight(std::span<const double> x, std::span<const double> y,
                              std::size_t i) {
  const std::size_t n = x.size();
  std::size_t lo = (i == 0) ? 0 : i - 1;
  if (lo + 4 > n) lo = n - 4;
  const double a = x[i], b = x[i + 1];
  const double h = b - a;
  const double c = 0.5 * (a + b);
  const double d = 0.5 * h / std::sqrt(3.0);
  const double f1 = lagrange_eval(&x[lo], &y[lo], 4, c - d);
  const double f2 = lagrange_eval(&x[lo], &y[lo], 4, c + d);
  return 0.5 * h * (f1 + f2);
}

}  // namespace

bool parallel_enabled() noexcept { return g_parallel.load(std::memory_order_relaxed); }
void set_parallel(bool on) noexcept { g_parallel.store(on, std::memory_order_relaxed); }

void fd_weights(double x0, std::span<const double> x, int m, std::span<double> w) {
  // Fornberg's recurrence; exact for polynomials up to degree x.size()-1.
  const int n = static_cast<int>(x.size());
  require(m >= 0 && n > m, "stencil-error", "not enough nodes for requested derivative");
  std::vector<double> c(static_cast<std::size_t>((m + 1) * n), 0.0);
  auto C = [&](int k, int j) -> double& { return c[static_cast<std::size_t>(k * n + j)]; };
  double c1 = 1.0;
  double c4 = x[0] - x0;
  C(0, 0) = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[static_cast<std::size_t>(i)] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = x[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(j)];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          C(k, i) = c1 * (k * C(k - 1, i - 1) - c5 * C(k, i - 1)) / c2;
        C(0, i) = -c1 * c5 * C(0, i - 1) / c2;
      }
      for (int k = mn; k >= 1; --k) C(k, j) = (c4 * C(k, j) - k * C(k - 1, j)) / c3;
      C(0, j) = c4 * C(0, j) / c3;
    }
    c1 = c2;
  }
  for (int j = 0; j < n; ++j) w[static_cast<std::size_t>(j)] = C(m, j);
}

void derivative(std::span<const double> x, std::span<const double> y, int order,
                std::span<double> out) {
  const std::size_t n = x.size();
  require(order == 1 || order == 2, "stencil-error", "derivative order must be 1 or 2");
  const std::size_t width = (order == 1) ? 5 : 7;
  require(n >= width, "stencil-error", "grid too short for stencil");
  const bool par = parallel_enabled() && n >= kParGrain;
  const std::ptrdiff_t ni = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static) if (par)
  for (std::ptrdiff_t ii = 0; ii < ni; ++ii) {
    const std::size_t i = static_cast<std::size_t>(ii);
    std::size_t lo = (i >= width / 2) ? i - width / 2 : 0;
    if (lo + width > n) lo = n - width;
    double w[7];
    fd_weights(x[i], x.subspan(lo, width), order, std::span<double>(w, width));
    double acc = 0.0;
    for (std::size_t j = 0; j < width; ++j) acc += w[j] * y[lo + j];
    out[i] = acc;
  }
}

void interval_weights(std::span<const double> x, std::span<const double> y,
                      std::span<double> w) {
  const std::size_t n = x.size();
  require(n >= 4, "stencil-error", "grid too short for quadrature");
  const bool par = parallel_enabled() && n >= kParGrain;
  const std::ptrdiff_t m = static_cast<std::ptrdiff_t>(n - 1);
#pragma omp parallel for schedule(static) if (par)
  for (std::ptrdiff_t ii = 0; ii < m; ++ii)
    w[static_cast<std::size_t>(ii)] = interval_weight(x, y, static_cast<std::size_t>(ii));
}

void cumulative_integral(std::span<const double> x, std::span<const double> y,
                         std::span<double> out) {
  const std::size_t n = x.size();
  std::vector<double> w(n - 1);
  interval_weights(x, y, w);

  // Blocked prefix with fixed block boundaries: the summation order is the
  // same whether or not the fill loop runs in parallel.
  constexpr std::size_t kBlock = 2048;
  const std::size_t m = n - 1;
  const std::size_t nb = (m + kBlock - 1) / kBlock;
  std::vector<double> carry(nb, 0.0);
  for (std::size_t b = 0; b + 1 < nb; ++b) {
    double s = 0.0;
    const std::size_t lo = b * kBlock, hi = std::min(m, lo + kBlock);
    for (std::size_t i = lo; i < hi; ++i) s += w[i];
    carry[b + 1] = carry[b] + s;
  }
  out[0] = 0.0;
  const bool par = parallel_enabled() && m >= kParGrain && nb > 1;
  const std::ptrdiff_t nbi = static_cast<std::ptrdiff_t>(nb);
#pragma omp parallel for schedule(static) if (par)
  for (std::ptrdiff_t bb = 0; bb < nbi; ++bb) {
    const std::size_t b = static_cast<std::size_t>(bb);
    double acc = carry[b];
    const std::size_t lo = b * kBlock, hi = std::min(m, lo + kBlock);
    for (std::size_t i = lo; i < hi; ++i) {
      acc += w[i];
      out[i + 1] = acc;
    }
  }
}

void eval_cubic_many(std::span<const double> x, std::span<const double> y,
                     std::span<const double> q, std::span<double> out) {
  const std::size_t n = x.size();
  require(n >= 4, "stencil-error", "grid too short for cubic interpolation");
  const bool par = parallel_enabled() && q.size() >= kParGrain;
  const std::ptrdiff_t nq = static_cast<std::ptrdiff_t>(q.size());
#pragma omp parallel for schedule(static) if (par)
  for (std::ptrdiff_t ii = 0; ii < nq; ++ii) {
    const std::size_t k = static_cast<std::size_t>(ii);
    const std::size_t i = locate_sorted(x, q[k]);
    std::size_t lo = (i == 0) ? 0 : i - 1;
    if (lo + 4 > n) lo = n - 4;
    out[k] = lagrange_eval(&x[lo], &y[lo], 4, q[k]);
  }
}

double reduce_min(std::span<const double> v) {
  double m = v[0];
  const bool par = parallel_enabled() && v.size() >= kParGrain;
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(v.size());
#pragma omp parallel for schedule(static) reduction(min : m) if (par)
  for (std::ptrdiff_t i = 0; i < n; ++i) m = std::min(m, v[static_cast<std::size_t>(i)]);
  return m;
}

double reduce_max(std::span<const double> v) {
  double m = v[0];
  const bool par = parallel_enabled() && v.size() >= kParGrain;
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(v.size());
#pragma omp parallel for schedule(static) reduction(max : m) if (par)
  for (std::ptrdiff_t i = 0; i < n; ++i) m = std::max(m, v[static_cast<std::size_t>(i)]);
  return m;
}

}  // namespace janglab::kernels
