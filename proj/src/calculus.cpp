#include "janglab/calculus.hpp"

#include <cmath>
#include <vector>

#include "janglab/errors.hpp"
#include "janglab/kernels.hpp"

namespace janglab {

RadialProfile derivative(const RadialProfile& p, int order) {
  std::vector<double> out(p.size());
  kernels::derivative(p.grid()->points(), p.values(), order, out);
  return {p.grid(), std::move(out)};
}

namespace {

// Prefix integral from the first node, plus interval weights for partial use.
struct Cumulative {
  std::vector<double> prefix;
  explicit Cumulative(const RadialProfile& p) : prefix(p.size()) {
    kernels::cumulative_integral(p.grid()->points(), p.values(), prefix);
  }
};

// F(r) = int_{r_first}^{r} p, with the off-node part from the interpolant.
double prefix_at(const RadialProfile& p, const Cumulative& c, double r) {
  const auto& x = p.grid()->points();
  const std::size_t i = p.grid()->locate(r);
  if (r == x[i]) return c.prefix[i];
  // 2-point Gauss-Legendre on [x_i, r], exact for the local cubic.
  const double h = r - x[i];
  const double mid = 0.5 * (x[i] + r);
  const double d = 0.5 * h / std::sqrt(3.0);
  const double q[2] = {mid - d, mid + d};
  double f[2];
  kernels::eval_cubic_many(x, p.values(), q, f);
  return c.prefix[i] + 0.5 * h * (f[0] + f[1]);
}

}  // namespace

RadialProfile integrate_from(const RadialProfile& p, double anchor, Direction dir) {
  require(p.grid()->contains(anchor), "range-error", "anchor outside grid");
  Cumulative c(p);
  const double base = prefix_at(p, c, anchor);
  std::vector<double> out(p.size());
  const double sign = (dir == Direction::outward) ? 1.0 : -1.0;
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = sign * (c.prefix[i] - base);
  return {p.grid(), std::move(out)};
}

double integral(const RadialProfile& p) {
  Cumulative c(p);
  return c.prefix.back();
}

double integral_between(const RadialProfile& p, double a, double b) {
  require(a <= b, "range-error", "integral bounds out of order");
  Cumulative c(p);
  return prefix_at(p, c, b) - prefix_at(p, c, a);
}

RadialProfile integrate_monotone_prefix(const RadialProfile& p) {
  const auto& x = p.grid()->points();
  const std::vector<double>& y = p.values();
  const std::vector<double> d = monotone_slopes(x, y);
  std::vector<double> s(y.size());
  s[0] = 0.0;
  for (std::size_t i = 0; i + 1 < y.size(); ++i) {
    const double h = x[i + 1] - x[i];
    const double y0 = y[i], y1 = y[i + 1];
    if (y0 > 0.0 && y1 > 0.0 && (y0 > 4.0 * y1 || y1 > 4.0 * y0)) {
      // Reciprocal-linear rule, exact for pole integrands A/(x - a): a
      // horizon metric factor decays across single intervals faster than
      // any polynomial rule tracks.
      const double amp = h / (1.0 / y1 - 1.0 / y0);
      s[i + 1] = s[i] + amp * std::log(y0 / y1);
    } else {
      s[i + 1] = s[i] + h * (0.5 * (y0 + y1) + h * (d[i] - d[i + 1]) / 12.0);
    }
  }
  return {p.grid(), std::move(s)};
}

RadialProfile to_arclength(const RadialProfile& g11) {
  require(g11.min() > 0.0, "metric-degenerate", "g11 must be positive for arclength");
  // Limited Hermite integration keeps s strictly increasing even where
  // sqrt(g11) steepens into the inverse-sqrt horizon blow-up that makes an
  // unlimited cubic overshoot.
  return integrate_monotone_prefix(map(g11, [](double g) { return std::sqrt(g); }));
}

RadialProfile resample(const RadialProfile& p, const GridPtr& grid) {
  std::vector<double> out = p.eval_many(grid->points());
  return {grid, std::move(out), p.interp()};
}

double fit_decay_exponent(const RadialProfile& p, double r_lo, double r_hi) {
  return fit_power_tail(p, r_lo, r_hi).exponent;
}

PowerFit fit_power_tail(const RadialProfile& p, double r_lo, double r_hi) {
  require(r_lo < r_hi, "range-error", "fit window out of order");
  const auto& x = p.grid()->points();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t m = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (x[i] < r_lo || x[i] > r_hi) continue;
    require(p[i] > 0.0, "fit-error", "nonpositive sample in log-log fit window");
    const double lx = std::log(x[i]);
    const double ly = std::log(p[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++m;
  }
  require(m >= 3, "fit-error", "fewer than 3 samples in fit window");
  const double det = static_cast<double>(m) * sxx - sx * sx;
  const double slope = (static_cast<double>(m) * sxy - sx * sy) / det;
  const double inter = (sy - slope * sx) / static_cast<double>(m);
  return {std::exp(inter), -slope};
}

double monotone_level(const RadialProfile& p, double target) {
  const auto& x = p.grid()->points();
  const std::size_t n = p.size();
  for (std::size_t i = n - 1; i-- > 0;) {
    if ((p[i] - target) * (p[i + 1] - target) <= 0.0) {
      double lo = x[i], hi = x[i + 1];
      double flo = p[i] - target;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo <= 1e-12 * std::max(1.0, std::abs(mid))) return mid;
        const double fm = p(mid) - target;
        if ((flo <= 0.0) == (fm <= 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      return 0.5 * (lo + hi);
    }
  }
  fail("level-not-found", "profile never attains the requested level");
}

double aitken_limit(double f1, double f2, double f3) {
  const double denom = f1 - 2.0 * f2 + f3;
  const double spread = std::abs(f1 - f3);
  if (std::abs(denom) <= 1e-14 * (std::abs(f1) + std::abs(f3) + 1.0) || spread == 0.0)
    return f3;
  const double d = f3 - f2;
  return f3 - d * d / denom;
}

}  // namespace janglab
