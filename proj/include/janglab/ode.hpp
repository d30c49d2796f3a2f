#ifndef JANGLAB_ODE_HPP_
#define JANGLAB_ODE_HPP_

#include <functional>
#include <span>
#include <vector>

namespace janglab {

struct OdeOptions {
  double rel_tol = 1e-12;
  double abs_tol = 1e-14;
  double max_step = 0.0;  // 0: no cap
  std::size_t max_steps = 2000000;
};

// Adaptive Dormand-Prince 5(4) for a scalar ODE y' = f(x, y), integrating
// from x0 to checkpoints.back() and recording y at every checkpoint
// (strictly increasing, checkpoints.front() >= x0).  If stop is given and
// returns true at an accepted step, integration halts and the remaining
// checkpoints keep the last value.
struct OdeResult {
  std::vector<double> y;
  bool stopped = false;
  double stop_x = 0.0;
};

OdeResult integrate_ode(const std::function<double(double, double)>& f, double x0, double y0,
                        std::span<const double> checkpoints, const OdeOptions& opt = {},
                        const std::function<bool(double, double)>& stop = nullptr);

}  // namespace janglab

#endif  // JANGLAB_ODE_HPP_
