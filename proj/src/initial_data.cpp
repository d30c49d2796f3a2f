#include "janglab/initial_data.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "janglab/errors.hpp"
#include "janglab/geometry.hpp"
#include "janglab/masses.hpp"

namespace janglab {

namespace {

// Extrapolate theta^2 linearly through the two innermost nodes to its root;
// a boundary horizon sits where the expansion vanishes with a sqrt profile.
// r0_hint extends the acceptance reach when the grid starts very close to a
// declared boundary radius.
std::optional<double> boundary_root(const RadialProfile& theta, double r0_hint = -1.0) {
  const auto& x = theta.grid()->points();
  const double t1 = theta[0] * theta[0];
  const double t2 = theta[1] * theta[1];
  if (!(t2 > t1)) return std::nullopt;
  const double root = x[0] - t1 * (x[1] - x[0]) / (t2 - t1);
  double reach = 10.0 * (x[1] - x[0]);
  if (r0_hint >= 0.0) reach = std::max(reach, 4.0 * (x[0] - r0_hint));
  if (root > x[0] || root < x[0] - reach || root < 0.0) return std::nullopt;
  return root;
}

double bisect_zero(const RadialProfile& p, double lo, double hi) {
  double flo = p(lo);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if ((hi - lo) <= 1e-10 * std::max(1.0, std::abs(mid))) return mid;
    const double fm = p(mid);
    if ((flo <= 0.0) == (fm <= 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

const char* to_string(BoundaryKind k) {
  switch (k) {
    case BoundaryKind::complete_center: return "complete-center";
    case BoundaryKind::future_horizon: return "future-horizon";
    case BoundaryKind::past_horizon: return "past-horizon";
    case BoundaryKind::both_horizon: return "both-horizon";
  }
  return "complete-center";
}

BoundaryKind boundary_from_string(const std::string& s) {
  if (s == "complete-center") return BoundaryKind::complete_center;
  if (s == "future-horizon") return BoundaryKind::future_horizon;
  if (s == "past-horizon") return BoundaryKind::past_horizon;
  if (s == "both-horizon") return BoundaryKind::both_horizon;
  fail("data-invalid", "unknown boundary kind '" + s + "'");
}

void InitialData::validate() const {
  require(n >= 3, "data-invalid", "dimension must be >= 3");
  require(r0 >= 0.0, "data-invalid", "inner radius must be nonnegative");
  require(g11.grid()->same_as(*rho.grid()) && g11.grid()->same_as(*kn.grid()) &&
              g11.grid()->same_as(*kt.grid()),
          "data-invalid", "profiles must share one grid");
  require(g11.min() > 0.0, "metric-degenerate", "g11 must be positive");
  require(rho.min() > 0.0, "data-invalid", "rho must be positive for r > r0");
  const double rb = g11.grid()->back();
  require(std::abs(rho.values().back() / rb - 1.0) <= 1e-3, "data-invalid",
          "rho(r)/r does not approach 1 in the tail");
  if (boundary != BoundaryKind::complete_center) {
    auto [tp, tm] = null_expansions(*this);
    const bool plus = boundary != BoundaryKind::past_horizon;
    const bool minus = boundary != BoundaryKind::future_horizon;
    // The grid starts just off the horizon, so only require that the
    // relevant expansion extrapolates to zero at the boundary.
    if (plus)
      require(boundary_root(tp, r0).has_value() || std::abs(tp[0]) < 1e-8, "data-invalid",
              "declared future horizon but theta_+ does not vanish at r0");
    if (minus)
      require(boundary_root(tm, r0).has_value() || std::abs(tm[0]) < 1e-8, "data-invalid",
              "declared past horizon but theta_- does not vanish at r0");
  }
}

RadialProfile rho_s_deviation(const RadialProfile& g11, const RadialProfile& rho) {
  require(g11.min() > 0.0, "metric-degenerate", "g11 must be positive");
  const auto& x = rho.grid()->points();
  std::vector<double> dev(rho.size());
  for (std::size_t i = 0; i < dev.size(); ++i) dev[i] = rho[i] - x[i];
  const RadialProfile d1 = derivative(rho.with_values(std::move(dev)), 1);
  std::vector<double> out(rho.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    // rho_s - 1 = (1 + d1) / sqrt(g11) - 1 with the flat limit taken exactly.
    const double e = std::expm1(-0.5 * std::log1p(g11[i] - 1.0));
    out[i] = d1[i] + e + d1[i] * e;
  }
  return {rho.grid(), std::move(out)};
}

RadialProfile scalar_curvature(const RadialProfile& g11, const RadialProfile& rho, int n) {
  // The arclength form R = (n-1) rho^{-2} [(n-2)(1-rho_s^2) - 2 rho rho_ss]
  // integrates to 2 m_s = rho_s rho^{n-1} R / (n-1) for the Hawking profile
  // m = rho^{n-2}(1-rho_s^2)/2, so R = 2(n-1) m_r / (rho^{n-1} rho_r).  The
  // profile m stays smooth across a horizon where rho_s itself has a sqrt
  // singularity in r, which keeps the stencils clean there.
  const RadialProfile dev = rho_s_deviation(g11, rho);
  std::vector<double> mh(rho.size());
  for (std::size_t i = 0; i < mh.size(); ++i)
    mh[i] = -0.5 * std::pow(rho[i], n - 2) * dev[i] * (2.0 + dev[i]);
  const RadialProfile m_r = derivative(rho.with_values(std::move(mh)), 1);
  const RadialProfile rho_r = derivative(rho, 1);
  std::vector<double> out(g11.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = 2.0 * (n - 1) * m_r[i] / (std::pow(rho[i], n - 1) * rho_r[i]);
  return {g11.grid(), std::move(out)};
}

ConstraintDensities constraint_densities(const InitialData& d) {
  require(d.g11.min() > 0.0, "metric-degenerate", "g11 must be positive");
  const int n = d.n;
  const RadialProfile R = scalar_curvature(d.g11, d.rho, n);
  const RadialProfile sqrtg = map(d.g11, [](double g) { return std::sqrt(g); });
  const RadialProfile rho_r = derivative(d.rho, 1);
  const RadialProfile kt_r = derivative(d.kt, 1);
  std::vector<double> mu(R.size()), j(R.size());
  for (std::size_t i = 0; i < R.size(); ++i) {
    const double trk = d.kn[i] + (n - 1) * d.kt[i];
    const double k2 = d.kn[i] * d.kn[i] + (n - 1) * d.kt[i] * d.kt[i];
    mu[i] = (R[i] + trk * trk - k2) / (16.0 * M_PI);
    const double rho_s = rho_r[i] / sqrtg[i];
    const double kt_s = kt_r[i] / sqrtg[i];
    j[i] = (n - 1) * (rho_s / d.rho[i] * (d.kn[i] - d.kt[i]) - kt_s) / (8.0 * M_PI);
  }
  return {RadialProfile(d.grid(), std::move(mu)), RadialProfile(d.grid(), std::move(j))};
}

DecReport dec_check(const ConstraintDensities& c) {
  DecReport rep;
  rep.margin = std::numeric_limits<double>::infinity();
  const auto& x = c.mu.grid()->points();
  for (std::size_t i = 0; i < c.mu.size(); ++i) {
    const double m = c.mu[i] - std::abs(c.j_radial[i]);
    if (m < rep.margin) {
      rep.margin = m;
      rep.r_at_min = x[i];
    }
  }
  return rep;
}

std::pair<RadialProfile, RadialProfile> null_expansions(const InitialData& d) {
  require(d.g11.min() > 0.0, "metric-degenerate", "g11 must be positive");
  const int n = d.n;
  const RadialProfile rho_r = derivative(d.rho, 1);
  std::vector<double> tp(d.rho.size()), tm(d.rho.size());
  for (std::size_t i = 0; i < tp.size(); ++i) {
    const double h = std::sqrt(1.0 / d.g11[i]) * rho_r[i] / d.rho[i];
    tp[i] = (n - 1) * (h + d.kt[i]);
    tm[i] = (n - 1) * (h - d.kt[i]);
  }
  return {RadialProfile(d.grid(), std::move(tp)), RadialProfile(d.grid(), std::move(tm))};
}

std::optional<Horizon> find_outermost_horizon(const InitialData& d) {
  auto [tp, tm] = null_expansions(d);
  const auto& x = d.grid()->points();
  const std::size_t n = x.size();

  // Scan inward from the outermost node for the first sign change of either
  // expansion.
  std::optional<double> rp, rm;
  for (std::size_t i = n - 1; i-- > 0;) {
    if (!rp && tp[i] <= 0.0 && tp[i + 1] > 0.0) rp = bisect_zero(tp, x[i], x[i + 1]);
    if (!rm && tm[i] <= 0.0 && tm[i + 1] > 0.0) rm = bisect_zero(tm, x[i], x[i + 1]);
    if (rp || rm) break;
  }

  // No interior crossing: a declared boundary horizon sits at the edge of
  // the grid; extrapolate each expansion to its boundary root.
  if (!rp && !rm && d.boundary != BoundaryKind::complete_center) {
    if (d.boundary != BoundaryKind::past_horizon) rp = boundary_root(tp, d.r0);
    if (d.boundary != BoundaryKind::future_horizon) rm = boundary_root(tm, d.r0);
  }

  if (!rp && !rm) return std::nullopt;
  Horizon h;
  if (rp && rm) {
    const double scale = std::max({1.0, *rp, *rm});
    if (std::abs(*rp - *rm) <= 1e-6 * scale) {
      h.radius = std::max(*rp, *rm);
      h.kind = BoundaryKind::both_horizon;
    } else if (*rp > *rm) {
      h.radius = *rp;
      h.kind = BoundaryKind::future_horizon;
    } else {
      h.radius = *rm;
      h.kind = BoundaryKind::past_horizon;
    }
  } else if (rp) {
    h.radius = *rp;
    h.kind = BoundaryKind::future_horizon;
  } else {
    h.radius = *rm;
    h.kind = BoundaryKind::past_horizon;
  }
  return h;
}

AdmReport adm_quantities(const InitialData& d) {
  AdmReport rep;
  const int n = d.n;
  const RadialProfile mh = hawking_profile(d.g11, d.rho, n);
  rep.energy = hawking_adm_limit(mh, &rep.extrapolation_spread);

  // Surface-integral cross-check: in the area-radius chart the ADM flux
  // integrand reduces to (n-1)(ghat11 - 1)/rho, so E(rho) = rho^{n-2}
  // (ghat11 - 1)/2 on coordinate spheres.  ghat11 - 1 is assembled from the
  // deviations of g11 and rho_r so the flat limit is exact.
  const auto& xs = d.grid()->points();
  std::vector<double> rdev(d.rho.size());
  for (std::size_t i = 0; i < rdev.size(); ++i) rdev[i] = d.rho[i] - xs[i];
  const RadialProfile d1 = derivative(d.rho.with_values(std::move(rdev)), 1);
  RadialProfile esurf = d.g11.with_values([&] {
    std::vector<double> v(d.g11.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double rho_r = 1.0 + d1[i];
      const double ghat_m1 = (d.g11[i] - 1.0 - d1[i] * (2.0 + d1[i])) / (rho_r * rho_r);
      v[i] = 0.5 * std::pow(d.rho[i], n - 2) * ghat_m1;
    }
    return v;
  }());
  rep.energy_surface = hawking_adm_limit(esurf);

  // Momentum flux on coordinate spheres: the integrand of (1.6) is the
  // radial function -(n-1) k_t times the direction omega_i, whose sphere
  // average is evaluated by quadrature.
  double odd = 0.0;  // int_0^pi cos(t) sin^{n-2}(t) dt, composite Simpson
  {
    const int m = 512;
    const double h = M_PI / m;
    for (int i = 0; i <= m; ++i) {
      const double t = i * h;
      const double w = (i == 0 || i == m) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      odd += w * std::cos(t) * std::pow(std::sin(t), n - 2);
    }
    odd *= h / 3.0;
  }
  const double angular = unit_sphere_volume(n - 1) * std::abs(odd);
  double pmax = 0.0;
  const auto& x = d.grid()->points();
  for (std::size_t i = d.grid()->size() / 2; i < d.grid()->size(); ++i) {
    const double flux = std::abs(-(n - 1) * d.kt[i]) * std::pow(x[i], n - 1) * angular;
    pmax = std::max(pmax, flux / (2.0 * (n - 1) * unit_sphere_volume(n)));
  }
  rep.momentum = pmax;

  const double scale = std::max(1.0, std::abs(rep.energy));
  require(rep.extrapolation_spread <= 1e-6 * scale, "non-flat-tail",
          "Hawking limit failed to converge");

  if (rep.energy * rep.energy >= rep.momentum * rep.momentum) {
    rep.mass = std::sqrt(rep.energy * rep.energy - rep.momentum * rep.momentum);
    rep.mass_defined = true;
  } else {
    rep.mass = 0.0;
    rep.mass_defined = false;
  }

  RadialProfile knorm = zip(d.kn, d.kt, [n](double a, double b) {
    return std::sqrt(a * a + (n - 1) * b * b);
  });
  const double rb = d.grid()->back();
  const double kwin = std::max(knorm(rb), knorm(rb / 10.0));
  if (kwin > 1e-13)
    rep.k_decay_exponent = fit_decay_exponent(
        map(knorm, [](double v) { return std::max(v, 1e-300); }), rb / 10.0, rb);
  else
    rep.k_decay_exponent = std::numeric_limits<double>::infinity();
  return rep;
}

FlatnessReport verify_asymptotic_flatness(const InitialData& d) {
  FlatnessReport rep;
  const int n = d.n;
  const RadialProfile mh = hawking_profile(d.g11, d.rho, n);
  const double scale = std::max(1.0, std::abs(mh.values().back()));
  const double rb = d.grid()->back();
  require(rb >= 100.0 * scale, "insufficient-tail", "grid must extend to 100x mass scale");

  const double r_lo = rb / 100.0, r_hi = rb;
  RadialProfile gdev = map(d.g11, [](double g) { return std::abs(g - 1.0); });
  double gmax = 0.0;
  for (std::size_t i = 0; i < gdev.size(); ++i)
    if (d.grid()->points()[i] >= r_lo) gmax = std::max(gmax, gdev[i]);
  bool gpass = true;
  if (gmax > 1e-13) {
    auto fit = fit_power_tail(map(gdev, [](double v) { return std::max(v, 1e-300); }), r_lo, r_hi);
    rep.metric_exponent = fit.exponent;
    rep.metric_constant = fit.amplitude;
    gpass = fit.exponent >= (n - 2) - 0.2;
  }

  RadialProfile knorm = zip(d.kn, d.kt, [n](double a, double b) {
    return std::sqrt(a * a + (n - 1) * b * b);
  });
  double kmax = 0.0;
  for (std::size_t i = 0; i < knorm.size(); ++i)
    if (d.grid()->points()[i] >= r_lo) kmax = std::max(kmax, knorm[i]);
  bool kpass = true;
  if (kmax > 1e-13) {
    auto fit =
        fit_power_tail(map(knorm, [](double v) { return std::max(v, 1e-300); }), r_lo, r_hi);
    rep.k_exponent = fit.exponent;
    rep.k_constant = fit.amplitude;
    kpass = fit.exponent >= (n - 1) - 0.2;
  }
  rep.pass = gpass && kpass;
  return rep;
}

}  // namespace janglab
