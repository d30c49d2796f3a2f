#ifndef JANGLAB_MASSES_HPP_
#define JANGLAB_MASSES_HPP_

#include "janglab/initial_data.hpp"
#include "janglab/profile.hpp"

namespace janglab {

// Misner-Sharp / Hawking mass profile m = rho^{n-2}/2 (1 - rho_s^2) with the
// derivative taken in arclength; returned on the metric's own grid.
RadialProfile hawking_profile(const RadialProfile& g11, const RadialProfile& rho, int n);

// ADM energy as the extrapolated limit of the Hawking profile.
double hawking_adm_limit(const RadialProfile& hawking, double* spread = nullptr);

struct MonotonicityReport {
  // max |m'(s) - rho^{n-1} rho' R / (2(n-1))| over the trimmed interior
  double identity_residual = 0.0;
  // min m'(s); meaningful as a monotonicity check when R >= 0 and rho' >= 0
  double min_slope = 0.0;
};

// First-variation identity check on a uniform arclength resampling.
MonotonicityReport hawking_monotonicity_check(const RadialProfile& g11,
                                              const RadialProfile& rho, int n);

// Spacetime Hawking mass, H^2 replaced by H^2 - (Tr_S k)^2.
RadialProfile spacetime_hawking_profile(const InitialData& d);

struct PenroseReport {
  double mass = 0.0;
  double horizon_area_term = 0.0;  // 1/2 (A_0 / omega_{n-1})^{(n-2)/(n-1)}
  double slack = 0.0;
  bool horizon_found = false;
  double horizon_radius = 0.0;
  double horizon_area = 0.0;
};

PenroseReport penrose_check(const InitialData& d);

struct MassProfileReport {
  RadialProfile hawking;
  RadialProfile spacetime_hawking;
  RadialProfile arclength;  // s(r), for consumers working in arclength
  double adm_limit = 0.0;
  double monotonicity_min_slope = 0.0;
  double identity_residual = 0.0;
  double spacetime_min = 0.0;
  double penrose_slack = 0.0;
};

MassProfileReport mass_report(const InitialData& d);

}  // namespace janglab

#endif  // JANGLAB_MASSES_HPP_
