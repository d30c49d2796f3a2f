#ifndef JANGLAB_INITIAL_DATA_HPP_
#define JANGLAB_INITIAL_DATA_HPP_

#include <optional>
#include <string>
#include <utility>

#include "janglab/calculus.hpp"
#include "janglab/profile.hpp"

namespace janglab {

enum class BoundaryKind { complete_center, future_horizon, past_horizon, both_horizon };

const char* to_string(BoundaryKind k);
BoundaryKind boundary_from_string(const std::string& s);

// Spherically symmetric initial data set: metric g = g11 dr^2 + rho^2 g_S
// and extrinsic curvature k = k_n n x n + k_t (g - n x n), all sampled on
// one shared grid.
struct InitialData {
  int n = 3;
  double r0 = 0.0;
  BoundaryKind boundary = BoundaryKind::complete_center;
  RadialProfile g11, rho, kn, kt;

  const GridPtr& grid() const { return g11.grid(); }
  void validate() const;
};

struct ConstraintDensities {
  RadialProfile mu;        // energy density
  RadialProfile j_radial;  // radial momentum density J(e_s), unit radial frame
};

struct DecReport {
  double margin = 0.0;  // min over grid of mu - |J|
  double r_at_min = 0.0;
};

struct AdmReport {
  double energy = 0.0;             // Hawking-limit value (authoritative)
  double energy_surface = 0.0;     // flux-integral cross-check
  double momentum = 0.0;           // |P|
  double mass = 0.0;               // sqrt(E^2 - |P|^2) when defined
  bool mass_defined = true;        // false when E < |P|
  double extrapolation_spread = 0.0;
  double k_decay_exponent = 0.0;
};

struct Horizon {
  double radius = 0.0;
  BoundaryKind kind = BoundaryKind::both_horizon;
};

struct FlatnessReport {
  double metric_constant = 0.0;  // best-fit C in |g11 - 1| <= C r^{-p}
  std::optional<double> metric_exponent;
  double k_constant = 0.0;
  std::optional<double> k_exponent;
  bool pass = false;
};

// rho_s - 1 computed cancellation-free: the radial derivative acts on
// rho - r, and the metric factor enters through expm1/log1p, so exactly
// flat data give exactly zero instead of FD noise amplified by rho^{-2}.
RadialProfile rho_s_deviation(const RadialProfile& g11, const RadialProfile& rho);

// Scalar curvature of g = g11 dr^2 + rho^2 g_S via the arclength form
// R = (n-1) rho^{-2} [(n-2)(1 - rho_s^2) - 2 rho rho_ss].
RadialProfile scalar_curvature(const RadialProfile& g11, const RadialProfile& rho, int n);

ConstraintDensities constraint_densities(const InitialData& d);
DecReport dec_check(const ConstraintDensities& c);

// theta_pm = (n-1) (sqrt(g^11) rho' / rho  +-  k_t).
std::pair<RadialProfile, RadialProfile> null_expansions(const InitialData& d);

std::optional<Horizon> find_outermost_horizon(const InitialData& d);

AdmReport adm_quantities(const InitialData& d);

FlatnessReport verify_asymptotic_flatness(const InitialData& d);

}  // namespace janglab

#endif  // JANGLAB_INITIAL_DATA_HPP_
