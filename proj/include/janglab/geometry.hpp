#ifndef JANGLAB_GEOMETRY_HPP_
#define JANGLAB_GEOMETRY_HPP_

#include <cmath>
#include <cstddef>

namespace janglab {

// Volume of the unit sphere S^{n-1}: 2 pi^{n/2} / Gamma(n/2).
inline double unit_sphere_volume(int n) {
  return 2.0 * std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n);
}

// Area radius of a symmetry sphere of area A: A = omega_{n-1} rho^{n-1}.
inline double area_radius(double A, int n) {
  return std::pow(A / unit_sphere_volume(n), 1.0 / (n - 1));
}

inline double sphere_area(double rho, int n) {
  return unit_sphere_volume(n) * std::pow(rho, n - 1);
}

// Conformal Laplacian constant c_n = (n-2) / (4(n-1)).
inline double conformal_constant(int n) { return (n - 2.0) / (4.0 * (n - 1.0)); }

// Sup-norm diagnostics exclude 2% of nodes at each end, where one-sided
// stencils are lower order.
inline std::size_t trimmed_margin(std::size_t n) {
  return n < 100 ? 1 : n / 50;
}

}  // namespace janglab

#endif  // JANGLAB_GEOMETRY_HPP_
