#include "janglab/generators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "janglab/errors.hpp"
#include "janglab/geometry.hpp"

namespace janglab {

namespace {

// C-infinity bridge: 0 for t <= 0, 1 for t >= 1, all derivatives vanishing
// at both ends.
double bridge(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / t);
  const double b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

// Soft cap: identity below 0.7, constant 1 above 1.3, C-infinity, with
// Phi(x) <= min(x, 1) and Phi' in [0, 1].
double soft_unit_cap(double x) {
  constexpr double a = 0.7, b = 1.3;
  if (x <= a) return x;
  // Phi(x) = int_0^x (1 - bridge((t-a)/(b-a))) dt, by Simpson on [a, min(x,b)].
  const double hi = std::min(x, b);
  const int m = 64;
  const double h = (hi - a) / (2 * m);
  double s = 1.0 - bridge(0.0);
  for (int i = 1; i < 2 * m; ++i)
    s += ((i % 2) ? 4.0 : 2.0) * (1.0 - bridge((a + i * h - a) / (b - a)));
  s += 1.0 - bridge((hi - a) / (b - a));
  return a + s * h / 3.0;
}

}  // namespace

GridPtr default_grid(double r_start, double mass_scale, std::size_t points) {
  require(r_start > 0.0, "grid-invalid", "grid must start at positive radius");
  const double rmax = 1e4 * std::max(mass_scale, 1.0);
  require(rmax > r_start, "grid-invalid", "outer truncation below grid start");
  return RadialGrid::geometric(r_start, rmax, std::max<std::size_t>(points, 64));
}

InitialData schwarzschild_slice(double m, int n, const GridPtr& grid) {
  require(m > 0.0, "data-invalid", "Schwarzschild mass must be positive");
  const double rh = std::pow(2.0 * m, 1.0 / (n - 2));
  require(grid->front() > rh, "grid-below-horizon",
          "grid must start above the horizon radius (the metric is singular there)");
  RadialProfile g11 = RadialProfile::tabulate(grid, [m, n](double r) {
    const double x = std::pow(r, n - 2);
    return x / (x - 2.0 * m);  // (1 - 2m/r^{n-2})^{-1}, stable near the horizon
  });
  RadialProfile rho = RadialProfile::tabulate(grid, [](double r) { return r; });
  RadialProfile zero = RadialProfile::constant(grid, 0.0);
  InitialData d{n, rh, BoundaryKind::both_horizon, std::move(g11), std::move(rho), zero, zero};
  d.validate();
  return d;
}

InitialData schwarzschild_slice(double m, int n, std::size_t points) {
  const double rh = std::pow(2.0 * m, 1.0 / (n - 2));
  return schwarzschild_slice(m, n, default_grid(rh * (1.0 + kHorizonOffset), m, points));
}

InitialData from_hawking_profile(const HawkingProfileSpec& spec, int n, const GridPtr& grid) {
  require(static_cast<bool>(spec.m), "inadmissible-profile", "missing mass function");
  require(grid->front() > spec.r_min, "grid-below-horizon",
          "grid must start above r_min");
  if (spec.r_min > 0.0) {
    const double m0 = spec.m(spec.r_min);
    const double want = 0.5 * std::pow(spec.r_min, n - 2);
    require(std::abs(m0 - want) <= 1e-10 * std::max(1.0, want), "inadmissible-profile",
            "m(r_min) must equal r_min^{n-2}/2");
  }
  std::vector<double> g11(grid->size());
  double prev = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid->size(); ++i) {
    const double r = (*grid)[i];
    const double mm = spec.m(r);
    const double env = 0.5 * std::pow(r, n - 2);
    require(mm >= 0.0 && mm < env, "inadmissible-profile",
            "Hawking profile leaves 0 <= m < r^{n-2}/2");
    require(mm >= prev - 1e-12 * std::max(1.0, std::abs(mm)), "inadmissible-profile",
            "Hawking profile must be nondecreasing");
    prev = mm;
    const double zp2 = 2.0 * mm / (std::pow(r, n - 2) - 2.0 * mm);
    g11[i] = 1.0 + zp2;
  }
  RadialProfile rho = RadialProfile::tabulate(grid, [](double r) { return r; });
  RadialProfile zero = RadialProfile::constant(grid, 0.0);
  const BoundaryKind kind =
      spec.r_min > 0.0 ? BoundaryKind::both_horizon : BoundaryKind::complete_center;
  InitialData d{n, spec.r_min, kind, RadialProfile(grid, std::move(g11)), std::move(rho),
                zero, zero};
  d.validate();
  return d;
}

InitialData deep_well(const DeepWellParams& p, int n, std::size_t points) {
  require(p.area > 0.0 && p.depth > 0.0 && p.mass_bound > 0.0, "infeasible",
          "deep well needs positive area, depth and mass bound");
  const double delta = p.mass_bound;
  const double m_inf = 0.75 * delta;  // ADM mass, strictly below the bound
  const double m_eps = 0.5 * delta;   // Hawking mass at the r_eps level

  // Well strength eta: 1 - 2m/r^{n-2} on the plateau.  Chosen so the coarea
  // volume between the r_eps and r_eps/2 levels exceeds A_delta * L with 5%
  // margin; capped to keep m(r) nondecreasing through the inner ramp.
  const double eta_cap = 0.8 * (n - 2) / 6.0;
  double r_eps = p.r_eps, eta = 0.0;
  for (int it = 0; it < 6; ++it) {
    if (p.r_eps <= 0.0) r_eps = std::pow(2.0 * m_eps / (1.0 - eta), 1.0 / (n - 2));
    const double frac = 1.0 - std::pow(2.0, -n);
    const double root = r_eps * frac / (1.05 * n * p.depth);
    eta = std::min(root * root, eta_cap);
  }
  require(r_eps > 0.0, "infeasible", "could not place the well radius");

  const double rho_A = area_radius(p.area, n);
  require(rho_A >= 3.0 * r_eps, "infeasible",
          "requested mass bound forces a well too wide for the reference area; "
          "the Penrose bound m >= (A0/omega)^{(n-2)/(n-1)}/2 leaves no room");

  const double r_min = 0.25 * r_eps;

  // Near the boundary the ratio m/env must leave 1 with an O(1) linear
  // slope (as the Schwarzschild slice does); a contact controlled by the
  // well strength eta alone would make g11 blow up so fast that the
  // conformal radius underflows.  beta stays small enough to keep m
  // nondecreasing against the envelope growth.
  const double beta = 0.1 * (n - 2);
  auto mass_fn = [=](double r) {
    const double env = 0.5 * std::pow(r, n - 2);
    const double tau = (r - r_min) / (0.5 * r_eps - r_min);
    double w;  // ramp of the well strength over [r_min, r_eps/2]
    if (tau >= 1.0) {
      w = 1.0;
    } else {
      w = 1.0 - (1.0 - tau) * bridge(2.0 * (1.0 - tau));
    }
    const double boundary = tau < 0.5 ? beta * tau * bridge(1.0 - 2.0 * tau) : 0.0;
    const double raw = env * (1.0 - eta * w - boundary);
    return m_inf * soft_unit_cap(raw / m_inf);
  };

  HawkingProfileSpec spec{r_min, mass_fn};
  auto grid = default_grid(r_min * (1.0 + kHorizonOffset), std::max(1.0, m_inf), points);
  return from_hawking_profile(spec, n, grid);
}

InitialData minkowski_graph(const GraphSpec& spec) {
  const GridPtr& grid = spec.f_prime.grid();
  const int n = spec.n;
  for (std::size_t i = 0; i < spec.f_prime.size(); ++i)
    require(std::abs(spec.f_prime[i]) < 1.0, "not-spacelike",
            "graph slope must satisfy |f'| < 1");
  const RadialProfile fpp = derivative(spec.f_prime, 1);
  std::vector<double> g11(grid->size()), kn(grid->size()), kt(grid->size());
  for (std::size_t i = 0; i < grid->size(); ++i) {
    const double w = spec.f_prime[i];
    const double r = (*grid)[i];
    const double om = 1.0 - w * w;
    g11[i] = om;
    // Second fundamental form of the graph t = f(x) in Minkowski space with
    // respect to the induced metric's orthonormal frame.
    kn[i] = fpp[i] / (om * std::sqrt(om));
    kt[i] = w / (r * std::sqrt(om));
  }
  RadialProfile rho = RadialProfile::tabulate(grid, [](double r) { return r; });
  InitialData d{n, 0.0, BoundaryKind::complete_center, RadialProfile(grid, std::move(g11)),
                std::move(rho), RadialProfile(grid, std::move(kn)),
                RadialProfile(grid, std::move(kt))};
  d.validate();
  return d;
}

HawkingProfileSpec random_admissible_profile(std::uint64_t seed, int n, bool with_horizon) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);

  const double r_min = with_horizon ? std::pow(10.0, -1.0 + 1.2 * uni(rng)) : 0.0;
  const double m0 = with_horizon ? 0.5 * std::pow(r_min, n - 2) : 0.0;

  // Smooth nondecreasing mass from tanh atoms, then scaled under the
  // admissibility envelope with a 0.9 margin factor away from the boundary.
  const double r_lo = std::max(2.0 * r_min, 0.2);
  const int atoms = 6;
  std::vector<double> c(atoms), w(atoms), a(atoms);
  double total = 0.0;
  for (int j = 0; j < atoms; ++j) {
    c[j] = r_lo * std::pow(60.0, uni(rng));
    w[j] = c[j] * std::pow(10.0, -0.7 + 0.5 * uni(rng));
    a[j] = 0.05 + uni(rng);
    total += a[j];
  }
  const double target_rise = std::max(0.05, m0) * std::pow(10.0, -0.7 + 1.0 * uni(rng));
  for (int j = 0; j < atoms; ++j) a[j] *= target_rise / total;

  const double anchor = with_horizon ? r_min : 0.0;
  auto rise = [=](double r) {
    double s = 0.0;
    for (int j = 0; j < atoms; ++j)
      s += a[j] * 0.5 *
           ((1.0 + std::tanh((r - c[j]) / w[j])) - (1.0 + std::tanh((anchor - c[j]) / w[j])));
    return s;
  };

  // Scale so m stays below 0.9 of the envelope (half the raw headroom very
  // near a horizon boundary, where the envelope is pinned to m0).
  double scale = 1.0;
  const double r_probe_max = 1e4;
  for (int i = 0; i <= 400; ++i) {
    const double r = std::max(anchor * (1.0 + 1e-6), 1e-3) *
                     std::pow(r_probe_max / std::max(anchor * (1.0 + 1e-6), 1e-3),
                              i / 400.0);
    const double env = 0.5 * std::pow(r, n - 2);
    const double g = rise(r);
    if (g <= 0.0) continue;
    const double head =
        (with_horizon && r < 2.0 * r_min) ? 0.45 * (env - m0) : 0.9 * env - m0;
    if (head <= 0.0) continue;
    scale = std::min(scale, 0.99 * head / g);
  }

  HawkingProfileSpec spec;
  spec.r_min = r_min;
  spec.m = [=](double r) { return m0 + scale * rise(r); };
  return spec;
}

InitialData random_dec_example(std::uint64_t seed, int n, std::size_t points) {
  const HawkingProfileSpec spec = random_admissible_profile(seed, n, true);
  const double m_inf = spec.m(1e4);
  auto grid =
      default_grid(spec.r_min * (1.0 + kHorizonOffset), std::max(1.0, m_inf), points);
  return from_hawking_profile(spec, n, grid);
}

}  // namespace janglab
