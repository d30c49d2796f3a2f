#ifndef JANGLAB_GENERATORS_HPP_
#define JANGLAB_GENERATORS_HPP_

#include <cmath>
#include <cstdint>
#include <functional>

#include "janglab/initial_data.hpp"

namespace janglab {

// Admissible Hawking mass function on [r_min, inf): nondecreasing, equal to
// r_min^{n-2}/2 at the boundary when r_min > 0, and below r^{n-2}/2 outside.
struct HawkingProfileSpec {
  double r_min = 0.0;
  std::function<double(double)> m;
};

// Spacelike radial graph in Minkowski space: sup |f'| < 1, decaying tail.
struct GraphSpec {
  RadialProfile f_prime;
  int n = 3;
};

// Default production grid: geometric with >= 2048 points from r_start out to
// 1e4 times the characteristic mass scale (at least 1).
GridPtr default_grid(double r_start, double mass_scale = 1.0, std::size_t points = 2048);

// Offset applied to horizon-boundary grids: start at r0 (1 + 1e-6).
constexpr double kHorizonOffset = 1e-6;

InitialData schwarzschild_slice(double m, int n, const GridPtr& grid);
InitialData schwarzschild_slice(double m, int n, std::size_t points = 2048);

InitialData from_hawking_profile(const HawkingProfileSpec& spec, int n, const GridPtr& grid);

// Metric with ADM mass < delta whose boundary-to-Sigma_A distance exceeds L;
// the well between the r_eps and r_eps/2 levels holds volume >= A_delta * L.
struct DeepWellParams {
  double area = 4.0 * M_PI;  // A of the reference level Sigma_A
  double depth = 10.0;       // L
  double mass_bound = 0.1;   // delta
  double r_eps = 0.0;        // 0: pick so the Hawking mass at r_eps is delta/2
};
InitialData deep_well(const DeepWellParams& p, int n, std::size_t points = 2048);

InitialData minkowski_graph(const GraphSpec& spec);

// Seeded admissible Hawking profiles for randomized suites: sorted random
// increments under the r^{n-2}/2 envelope with a 0.9 margin factor.
HawkingProfileSpec random_admissible_profile(std::uint64_t seed, int n,
                                             bool with_horizon = true);
InitialData random_dec_example(std::uint64_t seed, int n, std::size_t points = 2048);

}  // namespace janglab

#endif  // JANGLAB_GENERATORS_HPP_
