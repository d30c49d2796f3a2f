#ifndef JANGLAB_JANG_HPP_
#define JANGLAB_JANG_HPP_

#include <optional>

#include "janglab/initial_data.hpp"

namespace janglab {

// Which blow-up branch to solve at a both-horizon boundary.
enum class JangBranch { automatic, future, past };

struct JangSolution {
  RadialProfile v;         // sqrt(g^11) f' / sqrt(1 + g^11 f'^2), |v| < 1 off the horizon
  RadialProfile f_prime;   // sqrt(g11) v / sqrt(1 - v^2)
  RadialProfile f;         // normalized so f -> 0 at infinity
  RadialProfile gbar11;    // g11 / (1 - v^2)
  RadialProfile h_n, h_t;  // graph second fundamental form, gbar-orthonormal frame
  RadialProfile q_radial;  // q(e_sbar), gbar-orthonormal
  RadialProfile w_radial;  // w(e_s), g-orthonormal; equals v in spherical symmetry
  double boundary_value = 0.0;
  double observed_vprime_r0 = 0.0;  // one-sided dv/dr at the inner end (diagnostic)
  double tail_decay_exponent = 0.0;
  bool cylindrical_end = false;
};

// Local tolerance of the adaptive v integration (default 1e-12).
double& jang_ode_tol();

// Solve sqrt(g^11) v_r + (n-1)(sqrt(g^11) rho_r/rho v - k_t) + (v^2-1) k_n = 0
// outward from the boundary value of the existence theorem (0 at a complete
// center, +1/-1 at a future/past horizon).
RadialProfile solve_v(const InitialData& d, JangBranch branch = JangBranch::automatic);

std::pair<RadialProfile, RadialProfile> reconstruct_f(const InitialData& d,
                                                      const RadialProfile& v);

JangSolution solve_jang_ode(const InitialData& d, JangBranch branch = JangBranch::automatic);

struct JangMetric {
  RadialProfile gbar11;
  RadialProfile rho;
  int n = 3;
  double r0 = 0.0;
  BoundaryKind boundary = BoundaryKind::complete_center;
  bool cylindrical_end = false;
};

JangMetric jang_metric(const InitialData& d, const JangSolution& sol);

// sup over the trimmed interior of |Tr_gbar(h - k)| / (1 + local |h| + |k|).
double trace_identity_sup(const InitialData& d, const JangSolution& sol);

// sup over the trimmed interior of the pointwise defect of
// R_gbar = 16 pi (mu - J(w)) + |h-k|^2 + 2|q|^2 - 2 div q.
double scalar_identity_residual(const InitialData& d, const JangSolution& sol);

// |h - k|_gbar as a profile (gbar-orthonormal components).
RadialProfile hk_pointwise_norm(const InitialData& d, const JangSolution& sol);

// (int_{Omega_A cap T_D} |h-k|^p dV_gbar)^{1/p}; the optional A_lo replaces
// the tubular inner cut by the Sigma_{A_lo} level if that is further out.
double hk_difference_lp(const InitialData& d, const JangSolution& sol, double A, double D,
                        double p, std::optional<double> A_lo = std::nullopt);

// Margin of the stability inequality against a compactly supported test
// function phi (LHS - RHS >= 0 analytically).
double stability_margin(const InitialData& d, const JangSolution& sol,
                        const RadialProfile& phi);

}  // namespace janglab

#endif  // JANGLAB_JANG_HPP_
