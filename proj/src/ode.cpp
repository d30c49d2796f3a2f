#include "janglab/ode.hpp"

#include <algorithm>
#include <cmath>

#include "janglab/errors.hpp"

namespace janglab {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                 e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                 e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

}  // namespace

OdeResult integrate_ode(const std::function<double(double, double)>& f, double x0, double y0,
                        std::span<const double> checkpoints, const OdeOptions& opt,
                        const std::function<bool(double, double)>& stop) {
  require(!checkpoints.empty() && checkpoints.front() >= x0, "range-error",
          "checkpoints must start at or after x0");
  OdeResult res;
  res.y.resize(checkpoints.size());

  double x = x0, y = y0;
  double k1 = f(x, y);
  const double span_len = checkpoints.back() - x0;
  double h = span_len > 0.0 ? span_len / 1024.0 : 0.0;
  if (opt.max_step > 0.0) h = std::min(h, opt.max_step);

  std::size_t next = 0;
  // Emit any checkpoints coincident with the start.
  while (next < checkpoints.size() && checkpoints[next] <= x) res.y[next++] = y;

  std::size_t steps = 0;
  while (next < checkpoints.size()) {
    require(++steps <= opt.max_steps, "no-convergence", "ODE step limit exceeded");
    const double target = checkpoints[next];
    bool hit = false;
    if (x + h >= target) {
      h = target - x;
      hit = true;
    }
    const double k2 = f(x + h * a21, y + h * a21 * k1);
    const double k3 = f(x + h * (3.0 / 10), y + h * (a31 * k1 + a32 * k2));
    const double k4 = f(x + h * (4.0 / 5), y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const double k5 = f(x + h * (8.0 / 9), y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const double k6 = f(x + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const double y5 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const double k7 = f(x + h, y5);
    const double err_abs =
        std::abs(h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7));
    const double tol = opt.abs_tol + opt.rel_tol * std::max(std::abs(y), std::abs(y5));
    const double ratio = err_abs / tol;

    if (ratio <= 1.0 || h <= 1e-14 * std::max(1.0, std::abs(x))) {
      x = x + h;
      y = y5;
      k1 = k7;  // FSAL
      if (hit) {
        res.y[next++] = y;
        while (next < checkpoints.size() && checkpoints[next] <= x) res.y[next++] = y;
      }
      if (stop && stop(x, y)) {
        res.stopped = true;
        res.stop_x = x;
        for (std::size_t j = next; j < checkpoints.size(); ++j) res.y[j] = y;
        return res;
      }
    }
    const double grow = 0.9 * std::pow(std::max(ratio, 1e-10), -0.2);
    h *= std::clamp(grow, 0.2, 5.0);
    if (opt.max_step > 0.0) h = std::min(h, opt.max_step);
    require(std::isfinite(y) && std::isfinite(h), "no-convergence", "ODE state not finite");
  }
  return res;
}

}  // namespace janglab
