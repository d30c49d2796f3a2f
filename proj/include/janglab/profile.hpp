#ifndef JANGLAB_PROFILE_HPP_
#define JANGLAB_PROFILE_HPP_

#include <functional>
#include <vector>

#include "janglab/grid.hpp"

namespace janglab {

enum class Interp {
  cubic,     // local 4-point Lagrange
  monotone,  // Fritsch-Carlson limited cubic, for profiles documented monotone
};

// A sampled real function of the radius.  Values must be finite at every
// node; off-grid evaluation is only defined within [front, back].
class RadialProfile {
 public:
  RadialProfile(GridPtr grid, std::vector<double> values, Interp interp = Interp::cubic);

  static RadialProfile tabulate(const GridPtr& grid, const std::function<double(double)>& f,
                                Interp interp = Interp::cubic);
  static RadialProfile constant(const GridPtr& grid, double c);

  const GridPtr& grid() const noexcept { return grid_; }
  const std::vector<double>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  Interp interp() const noexcept { return interp_; }

  double operator()(double r) const;
  std::vector<double> eval_many(const std::vector<double>& q) const;

  RadialProfile with_values(std::vector<double> values) const;
  RadialProfile with_interp(Interp interp) const;

  double min() const;
  double max() const;

 private:
  GridPtr grid_;
  std::vector<double> values_;
  Interp interp_;
  std::vector<double> slopes_;  // Fritsch-Carlson node derivatives (monotone only)
};

// Pointwise helpers; all operands must share the grid.
RadialProfile map(const RadialProfile& p, const std::function<double(double)>& f);
RadialProfile zip(const RadialProfile& a, const RadialProfile& b,
                  const std::function<double(double, double)>& f);

// Fritsch-Carlson node derivatives for monotone-limited cubics.
std::vector<double> monotone_slopes(const std::vector<double>& x,
                                    const std::vector<double>& y);

}  // namespace janglab

#endif  // JANGLAB_PROFILE_HPP_
