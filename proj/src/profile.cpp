#include "janglab/profile.hpp"

#include <algorithm>
#include <cmath>

#include "janglab/errors.hpp"
#include "janglab/kernels.hpp"

namespace janglab {

namespace {

// Fritsch-Carlson node derivatives: the Hermite interpolant through them is
// monotone on every interval where the data are.
std::vector<double> fc_slopes(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  std::vector<double> h(n - 1), delta(n - 1), d(n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = x[i + 1] - x[i];
    delta[i] = (y[i + 1] - y[i]) / h[i];
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (delta[i - 1] * delta[i] <= 0.0) {
      d[i] = 0.0;
    } else {
      const double w1 = 2.0 * h[i] + h[i - 1];
      const double w2 = h[i] + 2.0 * h[i - 1];
      d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
    }
  }
  auto endpoint = [](double h0, double h1, double d0, double d1) {
    double s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (s * d0 <= 0.0)
      s = 0.0;
    else if (d0 * d1 < 0.0 && std::abs(s) > 3.0 * std::abs(d0))
      s = 3.0 * d0;
    return s;
  };
  d[0] = endpoint(h[0], h[1], delta[0], delta[1]);
  d[n - 1] = endpoint(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
  return d;
}

inline double hermite(double x0, double x1, double y0, double y1, double d0, double d1,
                      double q) {
  const double h = x1 - x0;
  const double t = (q - x0) / h;
  const double t2 = t * t, t3 = t2 * t;
  return y0 * (2.0 * t3 - 3.0 * t2 + 1.0) + h * d0 * (t3 - 2.0 * t2 + t) +
         y1 * (-2.0 * t3 + 3.0 * t2) + h * d1 * (t3 - t2);
}

}  // namespace

RadialProfile::RadialProfile(GridPtr grid, std::vector<double> values, Interp interp)
    : grid_(std::move(grid)), values_(std::move(values)), interp_(interp) {
  require(grid_ != nullptr, "profile-invalid", "profile needs a grid");
  require(values_.size() == grid_->size(), "profile-invalid",
          "profile value count does not match grid");
  for (double v : values_)
    require(std::isfinite(v), "profile-invalid", "profile value not finite");
  if (interp_ == Interp::monotone) slopes_ = fc_slopes(grid_->points(), values_);
}

RadialProfile RadialProfile::tabulate(const GridPtr& grid,
                                      const std::function<double(double)>& f, Interp interp) {
  std::vector<double> v(grid->size());
  for (std::size_t i = 0; i < grid->size(); ++i) v[i] = f((*grid)[i]);
  return {grid, std::move(v), interp};
}

RadialProfile RadialProfile::constant(const GridPtr& grid, double c) {
  return {grid, std::vector<double>(grid->size(), c)};
}

double RadialProfile::operator()(double r) const {
  const std::size_t i = grid_->locate(r);  // range checked
  const auto& x = grid_->points();
  if (interp_ == Interp::monotone)
    return hermite(x[i], x[i + 1], values_[i], values_[i + 1], slopes_[i], slopes_[i + 1], r);
  double out;
  kernels::eval_cubic_many(x, values_, std::span<const double>(&r, 1),
                           std::span<double>(&out, 1));
  return out;
}

std::vector<double> RadialProfile::eval_many(const std::vector<double>& q) const {
  std::vector<double> out(q.size());
  if (interp_ == Interp::monotone) {
    for (std::size_t k = 0; k < q.size(); ++k) out[k] = (*this)(q[k]);
    return out;
  }
  for (double r : q)
    require(grid_->contains(r), "range-error", "evaluation point outside grid");
  kernels::eval_cubic_many(grid_->points(), values_, q, out);
  return out;
}

RadialProfile RadialProfile::with_values(std::vector<double> values) const {
  return {grid_, std::move(values), interp_};
}

RadialProfile RadialProfile::with_interp(Interp interp) const {
  return {grid_, values_, interp};
}

double RadialProfile::min() const { return kernels::reduce_min(values_); }
double RadialProfile::max() const { return kernels::reduce_max(values_); }

RadialProfile map(const RadialProfile& p, const std::function<double(double)>& f) {
  std::vector<double> v(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) v[i] = f(p[i]);
  return {p.grid(), std::move(v), p.interp()};
}

RadialProfile zip(const RadialProfile& a, const RadialProfile& b,
                  const std::function<double(double, double)>& f) {
  require(a.grid()->same_as(*b.grid()), "profile-invalid", "profiles on different grids");
  std::vector<double> v(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) v[i] = f(a[i], b[i]);
  return {a.grid(), std::move(v), a.interp()};
}

std::vector<double> monotone_slopes(const std::vector<double>& x,
                                    const std::vector<double>& y) {
  return fc_slopes(x, y);
}

}  // namespace janglab
