#include "janglab/jang.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "janglab/errors.hpp"
#include "janglab/geometry.hpp"
#include "janglab/kernels.hpp"
#include "janglab/ode.hpp"

namespace janglab {

namespace {

bool near_zero_k(const InitialData& d) {
  return std::max(std::abs(d.kn[0]), std::abs(d.kt[0])) < 1e-12 &&
         std::max(std::abs(d.kn[1]), std::abs(d.kt[1])) < 1e-12;
}

// The existence theorem pairs v(r0) = +1 with a past horizon and -1 with a
// future horizon, so that f diverges to -infinity / +infinity there.
double resolve_boundary_value(const InitialData& d, JangBranch branch) {
  switch (d.boundary) {
    case BoundaryKind::complete_center:
      require(branch == JangBranch::automatic, "data-invalid",
              "branch selection applies only to horizon boundaries");
      return 0.0;
    case BoundaryKind::future_horizon:
      require(branch != JangBranch::past, "data-invalid",
              "no past horizon present to anchor the past branch");
      return -1.0;
    case BoundaryKind::past_horizon:
      require(branch != JangBranch::future, "data-invalid",
              "no future horizon present to anchor the future branch");
      return 1.0;
    case BoundaryKind::both_horizon:
      return branch == JangBranch::future ? -1.0 : 1.0;
  }
  return 0.0;
}

}  // namespace

// Tighter than the nominal 1e-12 so the accumulated error over ~10^4
// checkpoints stays below the 1e-10 budget of the graph round trip.
double& jang_ode_tol() {
  static double tol = 2e-14;
  return tol;
}

RadialProfile solve_v(const InitialData& d, JangBranch branch) {
  d.validate();
  // No interior horizon: an expansion zero strictly inside the grid breaks
  // the existence theorem's hypotheses.
  if (auto h = find_outermost_horizon(d); h && h->radius > d.grid()->front())
    fail("interior-blow-up",
         "interior horizon at r = " + std::to_string(h->radius) + " violates eq-no-horiz");

  const auto& x = d.grid()->points();
  const int n = d.n;
  const double v_bdry = resolve_boundary_value(d, branch);

  const RadialProfile rho_r = derivative(d.rho, 1);
  // Interpolate the coefficient combinations that actually enter the ODE:
  // sqrt(g11) k at the nodes is finite (and exactly zero for time-symmetric
  // data) even where g11 blows up toward a horizon, while interpolating g11
  // itself there can overshoot negative.
  const RadialProfile drift = zip(rho_r, d.rho, [n](double rr, double rho) {
    return (n - 1) * rr / rho;
  });
  const RadialProfile source = zip(d.g11, d.kt, [n](double g, double kt) {
    return (n - 1) * std::sqrt(g) * kt;
  });
  const RadialProfile quad = zip(d.g11, d.kn, [](double g, double kn) {
    return std::sqrt(g) * kn;
  });
  // Quintic off-node evaluation: the cubic interpolant's O(h^4) coefficient
  // error would floor the solution error around 1e-10 regardless of the
  // step tolerance.
  const auto& xs = d.grid()->points();
  auto interp6 = [&xs](const RadialProfile& p, double r) {
    std::size_t i = p.grid()->locate(r);
    std::size_t lo = i >= 2 ? i - 2 : 0;
    if (lo + 6 > xs.size()) lo = xs.size() - 6;
    double w[6];
    kernels::fd_weights(r, std::span<const double>(&xs[lo], 6), 0, std::span<double>(w, 6));
    double acc = 0.0;
    for (int j = 0; j < 6; ++j) acc += w[j] * p[lo + j];
    return acc;
  };
  auto rhs = [&](double r, double v) {
    return -interp6(drift, r) * v + interp6(source, r) - (v * v - 1.0) * interp6(quad, r);
  };

  // Starting value at the first node.
  double v1;
  if (d.boundary == BoundaryKind::complete_center) {
    // The regular solution of the linearized equation
    // v' + (n-1) v / r = S,  S = sqrt(g11)((n-1) k_t + k_n),
    // is v(r1) = r1^{1-n} int_0^{r1} S t^{n-1} dt; extend S below the grid
    // by the Lagrange cubic through the first nodes.
    double w4[4];
    const double half = 0.5 * x[0];
    const double dgl = half / std::sqrt(3.0);
    const double tq[2] = {half - dgl, half + dgl};
    double integral01 = 0.0;
    for (double t : tq) {
      kernels::fd_weights(t, std::span<const double>(&x[0], 4), 0,
                          std::span<double>(w4, 4));
      double S = 0.0;
      for (int j = 0; j < 4; ++j) S += w4[j] * (source[j] + quad[j]);
      integral01 += half * S * std::pow(t, n - 1);
    }
    v1 = integral01 / std::pow(x[0], n - 1);
  } else if (near_zero_k(d)) {
    // Time symmetric: v = v0 (rho(r0)/rho)^{n-1} exactly.
    const double rho0 = d.rho[0] - rho_r[0] * (x[0] - d.r0);
    v1 = v_bdry * std::pow(rho0 / d.rho[0], n - 1);
  } else {
    // dv/ds vanishes at the matching horizon (theta_-+ = 0 there), so the
    // blow-up branch leaves the boundary quadratically in arclength; the
    // grid offset is small enough that v at the first node is v_bdry to
    // within O(ds^2).
    v1 = v_bdry * (1.0 - 1e-12);
  }

  OdeOptions opt;
  opt.rel_tol = jang_ode_tol();
  opt.abs_tol = 0.01 * jang_ode_tol();
  auto blow_up = [&](double, double v) { return std::abs(v) >= 1.0 + 1e-10; };
  OdeResult res = integrate_ode(rhs, x[0], v1, x, opt, blow_up);
  require(!res.stopped, "interior-blow-up",
          "|v| reached 1 at r = " + std::to_string(res.stop_x) +
              "; data admit an interior horizon");
  return {d.grid(), std::move(res.y)};
}

std::pair<RadialProfile, RadialProfile> reconstruct_f(const InitialData& d,
                                                      const RadialProfile& v) {
  const int n = d.n;
  std::vector<double> fp(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double one_m = 1.0 - v[i] * v[i];
    require(one_m > 0.0 || i == 0, "interior-blow-up", "|v| = 1 away from the boundary");
    fp[i] = std::sqrt(d.g11[i]) * v[i] / std::sqrt(std::max(one_m, 1e-300));
  }
  RadialProfile f_prime(d.grid(), std::move(fp));

  const double rb = d.grid()->back();
  double fmax = 0.0;
  for (std::size_t i = 0; i < f_prime.size(); ++i)
    if (d.grid()->points()[i] >= rb / 10.0) fmax = std::max(fmax, std::abs(f_prime[i]));

  double tail = 0.0;
  if (fmax > 1e-13) {
    const auto fit = fit_power_tail(
        map(f_prime, [](double t) { return std::max(std::abs(t), 1e-300); }), rb / 10.0, rb);
    require(fit.exponent >= (n - 1) - 0.5, "nonintegrable-tail",
            "f' decays too slowly to normalize f at infinity");
    const double sgn = f_prime.values().back() >= 0.0 ? 1.0 : -1.0;
    tail = sgn * fit.amplitude * std::pow(rb, 1.0 - fit.exponent) / (fit.exponent - 1.0);
  }

  const RadialProfile F = integrate_from(f_prime, d.grid()->front());
  const double Fb = F.values().back();
  RadialProfile f = map(F, [&](double t) { return t - Fb - tail; });
  // map() loses pairing with F's node index only if grids differed; same grid here.
  return {std::move(f_prime), std::move(f)};
}

JangSolution solve_jang_ode(const InitialData& d, JangBranch branch) {
  JangSolution sol{solve_v(d, branch),
                   RadialProfile::constant(d.grid(), 0.0),
                   RadialProfile::constant(d.grid(), 0.0),
                   RadialProfile::constant(d.grid(), 0.0),
                   RadialProfile::constant(d.grid(), 0.0),
                   RadialProfile::constant(d.grid(), 0.0),
                   RadialProfile::constant(d.grid(), 0.0),
                   RadialProfile::constant(d.grid(), 0.0)};
  auto [fp, f] = reconstruct_f(d, sol.v);
  sol.f_prime = std::move(fp);
  sol.f = std::move(f);

  sol.gbar11 = zip(d.g11, sol.v, [](double g, double v) { return g / (1.0 - v * v); });

  // Graph second fundamental form from the Hessian of f with the
  // spherically symmetric Christoffel symbols, expressed in the
  // gbar-orthonormal frame.
  const RadialProfile fpp = derivative(sol.f_prime, 1);
  const RadialProfile g11_r = derivative(d.g11, 1);
  const RadialProfile rho_r = derivative(d.rho, 1);
  std::vector<double> hn(sol.v.size()), ht(sol.v.size()), q(sol.v.size());
  for (std::size_t i = 0; i < sol.v.size(); ++i) {
    const double v = sol.v[i];
    const double one_m = std::max(1.0 - v * v, 1e-300);
    const double root = std::sqrt(one_m);
    const double hess_rr = fpp[i] - 0.5 * g11_r[i] / d.g11[i] * sol.f_prime[i];
    hn[i] = hess_rr * root * one_m / d.g11[i];
    ht[i] = rho_r[i] / (d.g11[i] * d.rho[i]) * sol.f_prime[i] * root;
    const double delta_n = hn[i] - one_m * d.kn[i];
    q[i] = v * delta_n / root;
  }
  sol.h_n = sol.v.with_values(std::move(hn));
  sol.h_t = sol.v.with_values(std::move(ht));
  sol.q_radial = sol.v.with_values(std::move(q));
  sol.w_radial = sol.v;

  sol.boundary_value = resolve_boundary_value(d, branch);
  const auto& x = d.grid()->points();
  sol.observed_vprime_r0 = (sol.v[1] - sol.v[0]) / (x[1] - x[0]);
  sol.cylindrical_end = d.boundary != BoundaryKind::complete_center;

  double vmax = 0.0;
  for (std::size_t i = 0; i < sol.v.size(); ++i)
    if (x[i] >= x.back() / 10.0) vmax = std::max(vmax, std::abs(sol.v[i]));
  sol.tail_decay_exponent =
      vmax > 1e-13 ? fit_decay_exponent(map(sol.v, [](double t) {
                       return std::max(std::abs(t), 1e-300);
                     }),
                                        x.back() / 10.0, x.back())
                   : std::numeric_limits<double>::infinity();
  return sol;
}

JangMetric jang_metric(const InitialData& d, const JangSolution& sol) {
  return {sol.gbar11, d.rho, d.n, d.r0, d.boundary, sol.cylindrical_end};
}

RadialProfile hk_pointwise_norm(const InitialData& d, const JangSolution& sol) {
  const int n = d.n;
  std::vector<double> out(sol.v.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double one_m = 1.0 - sol.v[i] * sol.v[i];
    const double dn = sol.h_n[i] - one_m * d.kn[i];
    const double dt = sol.h_t[i] - d.kt[i];
    out[i] = std::sqrt(dn * dn + (n - 1) * dt * dt);
  }
  return sol.v.with_values(std::move(out));
}

double trace_identity_sup(const InitialData& d, const JangSolution& sol) {
  const int n = d.n;
  const std::size_t m = sol.v.size();
  const std::size_t lo = trimmed_margin(m), hi = m - trimmed_margin(m);
  double sup = 0.0;
  for (std::size_t i = lo; i < hi; ++i) {
    const double one_m = 1.0 - sol.v[i] * sol.v[i];
    const double tr =
        sol.h_n[i] + (n - 1) * sol.h_t[i] - one_m * d.kn[i] - (n - 1) * d.kt[i];
    const double scale = 1.0 + std::abs(sol.h_n[i]) + (n - 1) * std::abs(sol.h_t[i]) +
                         std::abs(d.kn[i]) + (n - 1) * std::abs(d.kt[i]);
    sup = std::max(sup, std::abs(tr) / scale);
  }
  return sup;
}

double scalar_identity_residual(const InitialData& d, const JangSolution& sol) {
  const int n = d.n;
  const RadialProfile Rbar = scalar_curvature(sol.gbar11, d.rho, n);
  const ConstraintDensities cd = constraint_densities(d);
  const RadialProfile hk = hk_pointwise_norm(d, sol);

  // div_gbar q = rho^{1-n} d/dsbar (rho^{n-1} qhat).
  RadialProfile flux = zip(d.rho, sol.q_radial, [n](double rho, double qh) {
    return std::pow(rho, n - 1) * qh;
  });
  const RadialProfile flux_r = derivative(flux, 1);
  const std::size_t m = sol.v.size();
  const std::size_t lo = trimmed_margin(m), hi = m - trimmed_margin(m);
  double sup = 0.0;
  for (std::size_t i = lo; i < hi; ++i) {
    const double div_q =
        flux_r[i] / (std::sqrt(sol.gbar11[i]) * std::pow(d.rho[i], n - 1));
    const double rhs = 16.0 * M_PI * (cd.mu[i] - cd.j_radial[i] * sol.v[i]) +
                       hk[i] * hk[i] + 2.0 * sol.q_radial[i] * sol.q_radial[i] -
                       2.0 * div_q;
    sup = std::max(sup, std::abs(Rbar[i] - rhs));
  }
  return sup;
}

double hk_difference_lp(const InitialData& d, const JangSolution& sol, double A, double D,
                        double p, std::optional<double> A_lo) {
  require(p >= 1.0 && p <= 2.0, "range-error", "p must lie in [1, 2]");
  const int n = d.n;
  const double rho_A = area_radius(A, n);
  const double r_A = monotone_level(d.rho, rho_A);

  const RadialProfile sbar = to_arclength(sol.gbar11);
  const double s_A = sbar(r_A);
  double r_in = d.grid()->front();
  if (s_A - D > sbar.values().front()) r_in = monotone_level(sbar, s_A - D);
  if (A_lo) {
    const double r_cut = monotone_level(d.rho, area_radius(*A_lo, n));
    r_in = std::max(r_in, r_cut);
  }
  require(r_in < r_A, "region-empty", "inner cut is outside the Sigma_A level");

  const RadialProfile hk = hk_pointwise_norm(d, sol);
  RadialProfile integrand = zip(hk, d.rho, [&](double t, double rho) {
    return std::pow(t, p) * std::pow(rho, n - 1);
  });
  integrand = zip(integrand, sol.gbar11,
                  [](double t, double g) { return t * std::sqrt(g); });
  const double val = unit_sphere_volume(n) * integral_between(integrand, r_in, r_A);
  return std::pow(std::max(val, 0.0), 1.0 / p);
}

double stability_margin(const InitialData& d, const JangSolution& sol,
                        const RadialProfile& phi) {
  require(phi.grid()->same_as(*d.grid()), "profile-invalid",
          "test function must live on the data grid");
  const int n = d.n;
  const double cn = conformal_constant(n);
  const RadialProfile Rbar = scalar_curvature(sol.gbar11, d.rho, n);
  const ConstraintDensities cd = constraint_densities(d);
  const RadialProfile hk = hk_pointwise_norm(d, sol);
  const RadialProfile phi_r = derivative(phi, 1);

  std::vector<double> lhs(phi.size()), rhs(phi.size());
  for (std::size_t i = 0; i < phi.size(); ++i) {
    const double meas = std::pow(d.rho[i], n - 1) * std::sqrt(sol.gbar11[i]);
    const double grad2 = phi_r[i] * phi_r[i] / sol.gbar11[i];
    lhs[i] = (grad2 / cn + Rbar[i] * phi[i] * phi[i]) * meas;
    const double density = 16.0 * M_PI * (cd.mu[i] - cd.j_radial[i] * sol.v[i]) +
                           hk[i] * hk[i] + sol.q_radial[i] * sol.q_radial[i];
    rhs[i] = density * phi[i] * phi[i] * meas;
  }
  const double L = integral(RadialProfile(d.grid(), std::move(lhs)));
  const double R = integral(RadialProfile(d.grid(), std::move(rhs)));
  return unit_sphere_volume(n) * (L - R);
}

}  // namespace janglab
