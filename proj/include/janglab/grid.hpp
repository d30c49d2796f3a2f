#ifndef JANGLAB_GRID_HPP_
#define JANGLAB_GRID_HPP_

#include <cstddef>
#include <memory>
#include <vector>

namespace janglab {

enum class GridPolicy { uniform, geometric, supplied };

const char* to_string(GridPolicy p);
GridPolicy grid_policy_from_string(const std::string& s);

// Strictly increasing, finite, nonnegative sample radii.  Grids are
// immutable and shared between all profiles defined on them.
class RadialGrid {
 public:
  static std::shared_ptr<const RadialGrid> uniform(double a, double b, std::size_t n);
  static std::shared_ptr<const RadialGrid> geometric(double a, double b, std::size_t n);
  static std::shared_ptr<const RadialGrid> supplied(std::vector<double> pts);

  const std::vector<double>& points() const noexcept { return pts_; }
  std::size_t size() const noexcept { return pts_.size(); }
  double operator[](std::size_t i) const noexcept { return pts_[i]; }
  double front() const noexcept { return pts_.front(); }
  double back() const noexcept { return pts_.back(); }
  GridPolicy policy() const noexcept { return policy_; }

  bool contains(double r) const noexcept { return r >= front() && r <= back(); }

  // Index i with pts[i] <= r <= pts[i+1]; r must lie inside the range.
  std::size_t locate(double r) const;

  bool same_as(const RadialGrid& other) const noexcept { return this == &other || pts_ == other.pts_; }

 private:
  RadialGrid(std::vector<double> pts, GridPolicy policy);

  std::vector<double> pts_;
  GridPolicy policy_;
};

using GridPtr = std::shared_ptr<const RadialGrid>;

}  // namespace janglab

#endif  // JANGLAB_GRID_HPP_
