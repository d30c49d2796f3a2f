#ifndef JANGLAB_CONFORMAL_HPP_
#define JANGLAB_CONFORMAL_HPP_

#include "janglab/jang.hpp"

namespace janglab {

// Conformal factor u with u^{4/(n-2)} gbar = g_E in the tilde_r chart.
// Deep wells and cylinder ends push u below the double range, so the
// primary field is log(tilde_r/rho) = 2 log(u)/(n-2); u and tilde_r carry
// the exponentials, which may underflow to 0 at the inner end.
struct ConformalData {
  RadialProfile log_ratio;  // log(tilde_r / rho)
  RadialProfile tilde_r;
  RadialProfile u;
  double alpha = 0.0;        // u ~ 1 + alpha rho^{2-n} at infinity
  double grad_energy = 0.0;  // omega int gbar^{11} u_r^2 rho^{n-1} sqrt(gbar11) dr
  bool has_cylinder = false;
  double cylinder_decay_slope = 0.0;  // d log u / d depth fit along the cylinder
  double cylinder_fit_r2 = 0.0;
};

ConformalData conformal_factor(const JangMetric& jm);

// sup over the trimmed interior of |Delta_gbar u - c_n R_gbar u|.
double conformal_pde_residual(const JangMetric& jm, const ConformalData& cd);

struct BoundCheck {
  double value = 0.0;
  double bound = 0.0;
  double margin = 0.0;  // bound - value
};

// |grad u|^2_{L^2(gbar)} against (n-2)^2 omega_{n-1} m / (8 c_n).
BoundCheck gradient_energy_check(const JangMetric& jm, const ConformalData& cd, double mass);

// |grad log u|^2_{L^2(R^n)} against the same constant.
BoundCheck log_u_gradient_check(const JangMetric& jm, const ConformalData& cd, double mass);

struct HolderCheck {
  double seminorm = 0.0;
  double bound = 0.0;
  double margin = 0.0;
  std::size_t pairs = 0;
};

// Sampled C^{0,1/2} seminorm of log u over the Euclidean annulus with
// boundary areas [A0, A1], against sqrt(ctilde_n omega_{n-1} m / A0).
HolderCheck holder_estimate_check(const ConformalData& cd, int n, double mass, double A0,
                                  double A1, std::size_t pairs = 256);

// Hawking profile of u^{4/(n-2)} gbar; identically zero for the exact factor.
RadialProfile conformal_flatness_profile(const JangMetric& jm, const ConformalData& cd);
double conformal_flatness_sup(const JangMetric& jm, const ConformalData& cd);

}  // namespace janglab

#endif  // JANGLAB_CONFORMAL_HPP_
