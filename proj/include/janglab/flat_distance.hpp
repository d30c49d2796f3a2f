#ifndef JANGLAB_FLAT_DISTANCE_HPP_
#define JANGLAB_FLAT_DISTANCE_HPP_

#include <cmath>
#include <optional>

#include "janglab/conformal.hpp"
#include "janglab/jang.hpp"

namespace janglab {

struct RegionSpec {
  double A = 4.0 * M_PI;              // outer level area
  double D = 2.0;                     // tubular depth
  std::optional<double> A_eps;        // inner cut area; optimizer may choose
};

struct RegionGeometry {
  double r_A = 0.0;        // coordinate radius of Sigma_A
  double rho_A = 0.0;      // area radius of Sigma_A
  double area_A = 0.0;
  double depth = 0.0;      // arclength depth of Omega_A cap T_D below Sigma_A
  double r_inner = 0.0;    // inner radial boundary of the tube
  bool tube_hits_grid_end = false;
  double vol_tube = 0.0;   // Vol_gbar(Omega_A cap T_D)
  double diam_bound = 0.0;      // 2 depth + pi rho_A (used in the estimate)
  double diam_bound_cap = 0.0;  // the coarse 4 pi D cap
};

RegionGeometry region_geometry(const JangMetric& jm, const RegionSpec& spec);

// Metric closeness factor on the annulus Omega_{A_eps, A}:
// max(u, 1/u)^{2/(n-2)} - 1, the exact two-sided comparison constant.
double epsilon_on_annulus(const JangMetric& jm, const ConformalData& cd, double A_eps,
                          double A);

struct LambdaBound {
  double lambda = 0.0;  // (1+eps) pi rho_{A_eps} + 4 pi eps D, capped at 2 D0
  double Lambda = 0.0;  // max(sqrt(2 lambda D0), D0 sqrt(eps^2 + 2 eps))
};

LambdaBound lambda_bound(double eps, double rho_A_eps, double D, double D0);

// Every intermediate of the subregion estimate plus the final bounds.
struct VFBoundReport {
  double A = 0.0, D = 0.0, A_eps = 0.0;
  double epsilon = 0.0;
  double D0 = 0.0;
  double omega = 0.0;
  double lambda = 0.0;
  double Lambda = 0.0;
  double vol_W = 0.0, vol_Wp = 0.0;
  double vol_excess = 0.0, vol_excess_p = 0.0;
  double area_W = 0.0, area_Wp = 0.0;
  double vol_tube = 0.0, vol_ball = 0.0;
  double dF_bound = 0.0;
  double vol_diff = 0.0;
  double dVF_bound = 0.0;
  double r_A = 0.0, r_cut = 0.0;
  double tilde_r_A = 0.0, tilde_r_cut = 0.0;
};

VFBoundReport vf_bound(const JangMetric& jm, const ConformalData& cd, const RegionSpec& spec);

// Search A_eps in (0, A/2] minimizing the dVF bound; ties break toward the
// smaller cut.
VFBoundReport optimize_cut(const JangMetric& jm, const ConformalData& cd, double A, double D);

}  // namespace janglab

#endif  // JANGLAB_FLAT_DISTANCE_HPP_
