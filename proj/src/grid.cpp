#include "janglab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "janglab/errors.hpp"

namespace janglab {

const char* to_string(GridPolicy p) {
  switch (p) {
    case GridPolicy::uniform: return "uniform";
    case GridPolicy::geometric: return "geometric";
    case GridPolicy::supplied: return "supplied";
  }
  return "supplied";
}

GridPolicy grid_policy_from_string(const std::string& s) {
  if (s == "uniform") return GridPolicy::uniform;
  if (s == "geometric") return GridPolicy::geometric;
  if (s == "supplied") return GridPolicy::supplied;
  fail("grid-invalid", "unknown grid policy '" + s + "'");
}

RadialGrid::RadialGrid(std::vector<double> pts, GridPolicy policy)
    : pts_(std::move(pts)), policy_(policy) {
  require(pts_.size() >= 8, "grid-invalid", "grid needs at least 8 points");
  for (std::size_t i = 0; i < pts_.size(); ++i) {
    require(std::isfinite(pts_[i]) && pts_[i] >= 0.0, "grid-invalid",
            "grid point " + std::to_string(i) + " not finite nonnegative");
    if (i > 0)
      require(pts_[i] > pts_[i - 1], "grid-invalid",
              "grid not strictly increasing at index " + std::to_string(i));
  }
}

std::shared_ptr<const RadialGrid> RadialGrid::uniform(double a, double b, std::size_t n) {
  require(n >= 8 && b > a, "grid-invalid", "bad uniform grid parameters");
  std::vector<double> pts(n);
  const double h = (b - a) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) pts[i] = a + h * static_cast<double>(i);
  pts.back() = b;
  return std::shared_ptr<const RadialGrid>(new RadialGrid(std::move(pts), GridPolicy::uniform));
}

std::shared_ptr<const RadialGrid> RadialGrid::geometric(double a, double b, std::size_t n) {
  require(n >= 8 && b > a && a > 0.0, "grid-invalid", "bad geometric grid parameters");
  std::vector<double> pts(n);
  const double lq = std::log(b / a) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) pts[i] = a * std::exp(lq * static_cast<double>(i));
  pts.front() = a;
  pts.back() = b;
  return std::shared_ptr<const RadialGrid>(new RadialGrid(std::move(pts), GridPolicy::geometric));
}

std::shared_ptr<const RadialGrid> RadialGrid::supplied(std::vector<double> pts) {
  return std::shared_ptr<const RadialGrid>(new RadialGrid(std::move(pts), GridPolicy::supplied));
}

std::size_t RadialGrid::locate(double r) const {
  require(contains(r), "range-error",
          "radius " + std::to_string(r) + " outside grid [" + std::to_string(front()) + ", " +
              std::to_string(back()) + "]");
  auto it = std::upper_bound(pts_.begin(), pts_.end(), r);
  std::size_t i = static_cast<std::size_t>(it - pts_.begin());
  if (i > 0) --i;
  if (i >= pts_.size() - 1) i = pts_.size() - 2;
  return i;
}

}  // namespace janglab
