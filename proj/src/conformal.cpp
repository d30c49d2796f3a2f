#include "janglab/conformal.hpp"

#include <algorithm>
#include <cmath>

#include "janglab/errors.hpp"
#include "janglab/geometry.hpp"
#include "janglab/masses.hpp"

namespace janglab {

namespace {

// Kahan-style golden-ratio sequence for deterministic pair sampling.
double frac(double x) { return x - std::floor(x); }

}  // namespace

ConformalData conformal_factor(const JangMetric& jm) {
  const int n = jm.n;
  const auto& x = jm.rho.grid()->points();
  // rho_r - 1 by differentiating rho - r keeps the flat limit exact.
  std::vector<double> rdev(jm.rho.size());
  for (std::size_t i = 0; i < rdev.size(); ++i) rdev[i] = jm.rho[i] - x[i];
  const RadialProfile d1 = derivative(jm.rho.with_values(std::move(rdev)), 1);
  require(1.0 + d1.min() > 0.0, "nonmonotone-rho",
          "conformal construction needs strictly increasing rho");

  // dev = sqrt(ghat11) - 1 = sqrt(gbar11)/rho_r - 1, cancellation-free.
  RadialProfile dev = jm.gbar11.with_values([&] {
    std::vector<double> v(jm.gbar11.size());
    for (std::size_t i = 0; i < v.size(); ++i)
      v[i] = std::expm1(0.5 * std::log1p(jm.gbar11[i] - 1.0) - std::log1p(d1[i]));
    return v;
  }());

  // log(tilde_r / rho)(r) = -int_r^inf (sqrt(ghat11) - 1) drho/rho in the r
  // chart; the integrand (1 + d1) dev / rho blows up like an inverse sqrt at
  // a horizon, so the limited Hermite quadrature does the accumulation.
  RadialProfile integrand = jm.gbar11.with_values([&] {
    std::vector<double> v(jm.gbar11.size());
    for (std::size_t i = 0; i < v.size(); ++i)
      v[i] = (1.0 + d1[i]) * dev[i] / jm.rho[i];
    return v;
  }());
  const RadialProfile prefix = integrate_monotone_prefix(integrand);
  const double prefix_back = prefix.values().back();

  // Analytic tail beyond the truncation radius: dev ~ c rho^{2-n}.
  double tail = 0.0;
  {
    const double rb = jm.gbar11.grid()->back();
    double devmax = 0.0;
    for (std::size_t i = 0; i < dev.size(); ++i)
      if (x[i] >= rb / 10.0) devmax = std::max(devmax, std::abs(dev[i]));
    if (devmax > 1e-13) {
      const auto fit = fit_power_tail(
          map(dev, [](double t) { return std::max(std::abs(t), 1e-300); }), rb / 10.0, rb);
      require(fit.exponent > 0.05, "nonintegrable-deficit",
              "metric deficit decays too slowly for the conformal tail integral");
      // int_rb^inf c tau^{-kappa} dtau/tau = c rb^{-kappa} / kappa.
      const double sgn = dev.values().back() >= 0.0 ? 1.0 : -1.0;
      tail = sgn * fit.amplitude * std::pow(rb, -fit.exponent) / fit.exponent;
    }
    require(std::isfinite(tail), "nonintegrable-deficit", "conformal tail integral diverges");
  }

  ConformalData cd{jm.rho, jm.rho, jm.rho};  // placeholders, replaced below
  std::vector<double> lr(jm.rho.size()), u(jm.rho.size()), tr(jm.rho.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    lr[i] = -(prefix_back - prefix[i] + tail);
    require(std::isfinite(lr[i]), "nonintegrable-deficit",
            "conformal log-ratio must stay finite");
    u[i] = std::exp(0.5 * (n - 2) * lr[i]);  // may underflow at a deep end
    tr[i] = jm.rho[i] * std::exp(lr[i]);
  }
  cd.log_ratio = RadialProfile(jm.rho.grid(), std::move(lr));
  cd.u = RadialProfile(jm.rho.grid(), std::move(u));
  cd.tilde_r = RadialProfile(jm.rho.grid(), std::move(tr));

  // alpha from u ~ 1 + alpha rho^{2-n}: log-u differences between staggered
  // geometric radii are immune to constant shifts of log u, and Aitken
  // removes the next-order 1/rho correction.
  {
    auto logu = [&](double r) { return 0.5 * (n - 2) * cd.log_ratio(r); };
    const double rb = jm.rho.grid()->back();
    auto estimate = [&](double ra) {
      const double ratio_term =
          std::pow(jm.rho(ra), 2 - n) - std::pow(jm.rho(4.0 * ra), 2 - n);
      return (logu(ra) - logu(4.0 * ra)) / ratio_term;
    };
    cd.alpha = aitken_limit(estimate(rb / 64.0), estimate(rb / 16.0), estimate(rb / 4.0));
  }

  // Gradient energy of u over the Jang manifold; differentiating u - 1
  // keeps the flat case exactly zero, and the positive integrand with its
  // near-horizon inverse-sqrt spike goes through the limited quadrature.
  {
    const RadialProfile u_r = derivative(
        map(cd.u, [](double t) { return t - 1.0; }), 1);
    RadialProfile e = jm.gbar11.with_values([&] {
      std::vector<double> v(jm.gbar11.size());
      for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = u_r[i] * u_r[i] * std::pow(jm.rho[i], n - 1) / std::sqrt(jm.gbar11[i]);
      return v;
    }());
    cd.grad_energy = unit_sphere_volume(n) * integrate_monotone_prefix(e).values().back();
  }

  // Exponential decay along a cylindrical end: fit log u against arclength
  // over the innermost nodes, which span several e-foldings of the decay.
  cd.has_cylinder = jm.boundary != BoundaryKind::complete_center;
  if (cd.has_cylinder) {
    const RadialProfile sbar = to_arclength(jm.gbar11);
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    std::size_t m = 0;
    const std::size_t fit_count = std::min<std::size_t>(64, x.size() / 8);
    for (std::size_t i = 0; i < fit_count; ++i) {
      const double xs = sbar[i], ys = 0.5 * (n - 2) * cd.log_ratio[i];
      sx += xs; sy += ys; sxx += xs * xs; sxy += xs * ys; syy += ys * ys;
      ++m;
    }
    if (m >= 4) {
      const double det = m * sxx - sx * sx;
      // Slope against depth into the end (u ~ e^{-gamma s}), so decay is a
      // negative value; sbar increases outward, hence the sign flip.
      cd.cylinder_decay_slope = -(m * sxy - sx * sy) / det;
      const double cov = m * sxy - sx * sy;
      const double vx = m * sxx - sx * sx, vy = m * syy - sy * sy;
      cd.cylinder_fit_r2 = vx > 0 && vy > 0 ? cov * cov / (vx * vy) : 0.0;
    }
  }
  return cd;
}

double conformal_pde_residual(const JangMetric& jm, const ConformalData& cd) {
  const int n = jm.n;
  const double cn = conformal_constant(n);
  const RadialProfile Rbar = scalar_curvature(jm.gbar11, jm.rho, n);
  const RadialProfile u_r = derivative(map(cd.u, [](double t) { return t - 1.0; }), 1);
  RadialProfile flux = jm.gbar11.with_values([&] {
    std::vector<double> v(jm.gbar11.size());
    for (std::size_t i = 0; i < v.size(); ++i)
      v[i] = std::pow(jm.rho[i], n - 1) * u_r[i] / std::sqrt(jm.gbar11[i]);
    return v;
  }());
  const RadialProfile flux_r = derivative(flux, 1);
  const std::size_t m = cd.u.size();
  const std::size_t lo = trimmed_margin(m), hi = m - trimmed_margin(m);
  double sup = 0.0;
  for (std::size_t i = lo; i < hi; ++i) {
    const double lap =
        flux_r[i] / (std::sqrt(jm.gbar11[i]) * std::pow(jm.rho[i], n - 1));
    sup = std::max(sup, std::abs(lap - cn * Rbar[i] * cd.u[i]));
  }
  return sup;
}

BoundCheck gradient_energy_check(const JangMetric& jm, const ConformalData& cd, double mass) {
  const int n = jm.n;
  BoundCheck b;
  b.value = cd.grad_energy;
  b.bound = (n - 2.0) * (n - 2.0) * unit_sphere_volume(n) * mass /
            (8.0 * conformal_constant(n));
  b.margin = b.bound - b.value;
  return b;
}

BoundCheck log_u_gradient_check(const JangMetric& jm, const ConformalData& cd, double mass) {
  const int n = jm.n;
  // d log u / dr = (n-2)/2 d log_ratio / dr, well defined even where u
  // underflows; the tilde_r^{n-2} factor kills the deep-end contribution.
  const RadialProfile lr_r = derivative(cd.log_ratio, 1);
  // dtilde_r/dr = tilde_r sqrt(gbar11)/rho converts to the Euclidean chart.
  RadialProfile e = jm.gbar11.with_values([&] {
    std::vector<double> v(jm.gbar11.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double logu_r = 0.5 * (n - 2) * lr_r[i];
      v[i] = logu_r * logu_r * jm.rho[i] * std::pow(cd.tilde_r[i], n - 2) /
             std::sqrt(jm.gbar11[i]);
    }
    return v;
  }());
  BoundCheck b;
  b.value = unit_sphere_volume(n) * integrate_monotone_prefix(e).values().back();
  b.bound = (n - 2.0) * (n - 2.0) * unit_sphere_volume(n) * mass /
            (8.0 * conformal_constant(n));
  b.margin = b.bound - b.value;
  return b;
}

HolderCheck holder_estimate_check(const ConformalData& cd, int n, double mass, double A0,
                                  double A1, std::size_t pairs) {
  require(A0 > 0.0 && A1 > A0, "annulus-out-of-range", "need 0 < A0 < A1");
  const double r0 = area_radius(A0, n);
  const double r1 = area_radius(A1, n);
  // log u as a function of tilde_r over the outer portion where tilde_r is
  // strictly increasing and above underflow.
  const auto& tr = cd.tilde_r.values();
  std::size_t start = tr.size() - 1;
  while (start > 0 && tr[start - 1] > 0.0 && tr[start - 1] < tr[start]) --start;
  require(tr.size() - start >= 8, "annulus-out-of-range",
          "conformal chart too short for sampling");
  require(r0 >= tr[start] && r1 <= tr.back(), "annulus-out-of-range",
          "annulus exceeds the conformal chart");
  std::vector<double> tr_sub(tr.begin() + start, tr.end());
  std::vector<double> logu_sub(tr_sub.size());
  for (std::size_t i = 0; i < tr_sub.size(); ++i)
    logu_sub[i] = 0.5 * (n - 2) * cd.log_ratio[start + i];
  RadialProfile logu_of_tr(RadialGrid::supplied(std::move(tr_sub)), std::move(logu_sub));

  HolderCheck h;
  h.pairs = pairs;
  constexpr double golden = 0.6180339887498949;
  for (std::size_t k = 1; k <= pairs; ++k) {
    const double a = r0 + (r1 - r0) * frac(golden * static_cast<double>(k));
    const double b = r0 + (r1 - r0) * frac(golden * golden * static_cast<double>(k) + 0.37);
    if (std::abs(b - a) < 1e-9 * (r1 - r0)) continue;
    const double num = std::abs(logu_of_tr(b) - logu_of_tr(a));
    h.seminorm = std::max(h.seminorm, num / std::sqrt(std::abs(b - a)));
  }
  const double ctilde = (n - 2.0) * (n - 2.0) / (8.0 * conformal_constant(n));
  h.bound = std::sqrt(ctilde * unit_sphere_volume(n) * mass / A0);
  h.margin = h.bound - h.seminorm;
  return h;
}

RadialProfile conformal_flatness_profile(const JangMetric& jm, const ConformalData& cd) {
  // The conformal metric has area radius tilde_r and radial factor
  // (tilde_r/rho)^2 gbar11, so its Hawking profile is
  //   1/2 tilde_r^{n-2} (1 - q^2),  q = (rho_r + rho lr') / sqrt(gbar11),
  // assembled from deviations so that exactly flat input gives exactly 0
  // and a deep end only underflows the harmless tilde_r^{n-2} factor.
  const int n = jm.n;
  const auto& x = jm.rho.grid()->points();
  std::vector<double> rdev(jm.rho.size());
  for (std::size_t i = 0; i < rdev.size(); ++i) rdev[i] = jm.rho[i] - x[i];
  const RadialProfile d1 = derivative(jm.rho.with_values(std::move(rdev)), 1);
  const RadialProfile lr_r = derivative(cd.log_ratio, 1);
  std::vector<double> out(jm.rho.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    // One-sided stencils at a cylinder end can undershoot past -1; those
    // nodes sit inside the trimmed margin of every consumer.
    const double arg = std::max(d1[i] + jm.rho[i] * lr_r[i], -1.0 + 1e-12);
    const double devq =
        std::expm1(std::log1p(arg) - 0.5 * std::log1p(jm.gbar11[i] - 1.0));
    const double trn = std::exp((n - 2) * (std::log(jm.rho[i]) + cd.log_ratio[i]));
    out[i] = -0.5 * trn * devq * (2.0 + devq);
  }
  return {jm.rho.grid(), std::move(out)};
}

double conformal_flatness_sup(const JangMetric& jm, const ConformalData& cd) {
  const RadialProfile p = conformal_flatness_profile(jm, cd);
  const std::size_t m = p.size();
  const std::size_t lo = trimmed_margin(m), hi = m - trimmed_margin(m);
  double sup = 0.0;
  for (std::size_t i = lo; i < hi; ++i) sup = std::max(sup, std::abs(p[i]));
  return sup;
}

}  // namespace janglab
