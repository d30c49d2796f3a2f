#ifndef JANGLAB_CALCULUS_HPP_
#define JANGLAB_CALCULUS_HPP_

#include "janglab/profile.hpp"

namespace janglab {

enum class Direction { outward, inward };

// d^order p / dr^order, same grid.  Centered stencils of interior accuracy
// >= 4th order, one-sided at the ends.
RadialProfile derivative(const RadialProfile& p, int order = 1);

// Cumulative integral with value 0 at the anchor (anchor may fall between
// nodes).  outward: F(r) = int_anchor^r p; inward: F(r) = int_r^anchor p.
RadialProfile integrate_from(const RadialProfile& p, double anchor,
                             Direction dir = Direction::outward);

// int over the whole grid.
double integral(const RadialProfile& p);

// int_a^b p with off-node endpoints, a <= b, both within the grid.
double integral_between(const RadialProfile& p, double a, double b);

// Prefix integral from the first node with monotone-limited Hermite
// interval weights; each interval contributes at least h*min(y0,y1), so
// steep positive integrands (horizon blow-ups) keep positive increments.
RadialProfile integrate_monotone_prefix(const RadialProfile& p);

// Arclength from the innermost node: s(r) = int_{r_first}^r sqrt(g11) dr.
RadialProfile to_arclength(const RadialProfile& g11);

// Interpolate p onto another grid (targets must lie within p's range).
RadialProfile resample(const RadialProfile& p, const GridPtr& grid);

// Least-squares slope of log|p| against log r on [r_lo, r_hi].
double fit_decay_exponent(const RadialProfile& p, double r_lo, double r_hi);

// Least-squares fit p ~ c * r^{-k} on a window; returns {c, k}.
struct PowerFit {
  double amplitude;
  double exponent;
};
PowerFit fit_power_tail(const RadialProfile& p, double r_lo, double r_hi);

// Aitken extrapolation of three samples taken at geometrically spaced radii;
// returns the accelerated limit (plain last sample if already converged).
double aitken_limit(double f1, double f2, double f3);

// Outermost radius at which the profile attains the target value, located
// by bisection on the interpolant; level-not-found when never attained.
double monotone_level(const RadialProfile& p, double target);

}  // namespace janglab

#endif  // JANGLAB_CALCULUS_HPP_
