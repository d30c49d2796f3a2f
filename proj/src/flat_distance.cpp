#include "janglab/flat_distance.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "janglab/errors.hpp"
#include "janglab/geometry.hpp"

namespace janglab {

namespace {

// log tilde_r = log rho + log_ratio is strictly increasing, so the limited
// monotone interpolant cannot overshoot across the steep cylinder nodes.
RadialProfile log_tilde_r(const JangMetric& jm, const ConformalData& cd) {
  std::vector<double> v(cd.log_ratio.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = std::log(jm.rho[i]) + cd.log_ratio[i];
  return {cd.log_ratio.grid(), std::move(v), Interp::monotone};
}

double tube_volume(const JangMetric& jm, double r_lo, double r_hi) {
  const int n = jm.n;
  RadialProfile integrand = zip(jm.rho, jm.gbar11, [n](double rho, double g) {
    return std::pow(rho, n - 1) * std::sqrt(g);
  });
  return unit_sphere_volume(n) * integral_between(integrand, r_lo, r_hi);
}

}  // namespace

RegionGeometry region_geometry(const JangMetric& jm, const RegionSpec& spec) {
  require(spec.A > 0.0 && spec.D > 0.0, "range-error", "region needs A > 0 and D > 0");
  const int n = jm.n;
  const RadialProfile rho_r = derivative(jm.rho, 1);
  require(rho_r.min() > 0.0, "nonmonotone-rho", "region geometry needs monotone rho");

  RegionGeometry geo;
  geo.rho_A = area_radius(spec.A, n);
  geo.r_A = monotone_level(jm.rho, geo.rho_A);
  geo.area_A = spec.A;

  const RadialProfile sbar = to_arclength(jm.gbar11);
  const double s_A = sbar(geo.r_A);
  // Distance available inward of Sigma_A on the grid, extended through a
  // smooth center for complete data.
  const bool complete = jm.boundary == BoundaryKind::complete_center;
  const double center_ext = complete ? jm.rho[0] : 0.0;
  const double available = s_A - sbar.values().front() + center_ext;

  geo.depth = complete ? std::min(spec.D, available) : spec.D;
  if (spec.D < available - center_ext) {
    geo.r_inner = monotone_level(sbar, s_A - spec.D);
    geo.tube_hits_grid_end = false;
  } else {
    geo.r_inner = jm.rho.grid()->front();
    geo.tube_hits_grid_end = !complete && spec.D > available;
  }

  geo.vol_tube = tube_volume(jm, geo.r_inner, geo.r_A);
  if (complete && geo.r_inner == jm.rho.grid()->front()) {
    // Cap over the unsampled smooth center.
    geo.vol_tube += unit_sphere_volume(n) * std::pow(jm.rho[0], n) / n;
  } else if (geo.tube_hits_grid_end) {
    // Cylindrical sliver below the grid start, area ~ const.
    geo.vol_tube += unit_sphere_volume(n) * std::pow(jm.rho[0], n - 1) *
                    (spec.D - available);
  }

  geo.diam_bound = 2.0 * geo.depth + M_PI * geo.rho_A;
  geo.diam_bound_cap = 4.0 * M_PI * spec.D;
  return geo;
}

double epsilon_on_annulus(const JangMetric& jm, const ConformalData& cd, double A_eps,
                          double A) {
  require(A_eps < A, "window-out-of-range", "annulus needs A_eps < A");
  const int n = jm.n;
  const double rho_lo = area_radius(A_eps, n);
  const double rho_hi = area_radius(A, n);
  const double r_lo =
      rho_lo <= jm.rho.values().front() ? jm.rho.grid()->front() : monotone_level(jm.rho, rho_lo);
  const double r_hi = monotone_level(jm.rho, rho_hi);

  // max(u, 1/u)^{2/(n-2)} - 1 = expm1(max |log_ratio|) over the annulus.
  // Off-node endpoints go through the monotone log tilde_r interpolant so
  // the steep cylinder values cannot overshoot.
  double worst = 0.0;
  auto visit = [&](double lr) { worst = std::max(worst, std::abs(lr)); };
  const RadialProfile logtr = log_tilde_r(jm, cd);
  visit(logtr(r_lo) - std::log(jm.rho(r_lo)));
  visit(logtr(r_hi) - std::log(jm.rho(r_hi)));
  const auto& x = cd.log_ratio.grid()->points();
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] >= r_lo && x[i] <= r_hi) visit(cd.log_ratio[i]);
  return std::expm1(worst);
}

LambdaBound lambda_bound(double eps, double rho_A_eps, double D, double D0) {
  require(eps >= 0.0, "range-error", "epsilon must be nonnegative");
  LambdaBound lb;
  lb.lambda = std::min((1.0 + eps) * M_PI * rho_A_eps + 4.0 * M_PI * eps * D, 2.0 * D0);
  lb.Lambda = std::max(std::sqrt(2.0 * lb.lambda * D0), D0 * std::sqrt(eps * eps + 2.0 * eps));
  return lb;
}

VFBoundReport vf_bound(const JangMetric& jm, const ConformalData& cd, const RegionSpec& spec) {
  const int n = jm.n;
  const RegionGeometry geo = region_geometry(jm, spec);
  const double A_eps = spec.A_eps.value_or(0.5 * spec.A);
  require(A_eps > 0.0 && A_eps < spec.A, "range-error", "need 0 < A_eps < A");

  VFBoundReport rep;
  rep.A = spec.A;
  rep.D = spec.D;
  rep.A_eps = A_eps;
  rep.r_A = geo.r_A;
  rep.vol_tube = geo.vol_tube;

  // W = Omega_{A_eps, A} clipped to the tubular neighborhood.
  const double rho_cut_target = area_radius(A_eps, n);
  double r_cut = rho_cut_target <= jm.rho.values().front()
                     ? jm.rho.grid()->front()
                     : monotone_level(jm.rho, rho_cut_target);
  r_cut = std::max(r_cut, geo.r_inner);
  require(r_cut < geo.r_A, "region-empty", "cut radius reached the Sigma_A level");
  rep.r_cut = r_cut;
  const double rho_cut = jm.rho(r_cut);

  rep.epsilon = epsilon_on_annulus(jm, cd, sphere_area(rho_cut, n), spec.A);

  rep.vol_W = tube_volume(jm, r_cut, geo.r_A);
  rep.vol_excess = std::max(geo.vol_tube - rep.vol_W, 0.0);
  rep.area_W = sphere_area(geo.rho_A, n) + sphere_area(rho_cut, n);

  const RadialProfile logtr = log_tilde_r(jm, cd);
  rep.tilde_r_A = std::exp(logtr(geo.r_A));
  rep.tilde_r_cut = std::exp(logtr(r_cut));
  const double omega_n = unit_sphere_volume(n);
  rep.vol_ball = omega_n * std::pow(rep.tilde_r_A, n) / n;
  rep.vol_excess_p = omega_n * std::pow(rep.tilde_r_cut, n) / n;
  rep.vol_Wp = rep.vol_ball - rep.vol_excess_p;
  rep.area_Wp = sphere_area(rep.tilde_r_A, n) + sphere_area(rep.tilde_r_cut, n);

  rep.D0 = std::max(geo.diam_bound, 2.0 * rep.tilde_r_A);
  const LambdaBound lb = lambda_bound(rep.epsilon, rho_cut, spec.D, rep.D0);
  rep.lambda = lb.lambda;
  rep.Lambda = lb.Lambda;
  rep.omega = std::acos(1.0 / (1.0 + rep.epsilon)) / M_PI * rep.D0 * (1.0 + 1e-9);

  rep.dF_bound = (2.0 * rep.Lambda + rep.omega) *
                     (rep.vol_W + rep.vol_Wp + rep.area_W + rep.area_Wp) +
                 rep.vol_excess + rep.vol_excess_p;
  rep.vol_diff = std::abs(rep.vol_tube - rep.vol_ball);
  rep.dVF_bound = rep.dF_bound + rep.vol_diff;
  return rep;
}

VFBoundReport optimize_cut(const JangMetric& jm, const ConformalData& cd, double A,
                           double D) {
  RegionSpec spec{A, D, std::nullopt};

  auto eval = [&](double a_eps) {
    RegionSpec s = spec;
    s.A_eps = a_eps;
    return vf_bound(jm, cd, s);
  };
  // Degenerate candidates score +inf; exceptions must not escape the
  // parallel region.
  std::string first_error;
  auto score = [&](double a_eps) {
    try {
      return eval(a_eps).dVF_bound;
    } catch (const numeric_error& e) {
#pragma omp critical
      if (first_error.empty()) first_error = e.what();
      return std::numeric_limits<double>::infinity();
    }
  };

  // Log-spaced coarse scan ascending from tiny cuts (ties keep the smaller);
  // cuts below the innermost grid sphere clamp to it, so the floor only
  // needs to reach past any conceivable grid start.
  constexpr int kCoarse = 64;
  std::vector<double> cand(kCoarse), val(kCoarse);
  for (int i = 0; i < kCoarse; ++i)
    cand[i] = A * 1e-16 * std::pow(0.5 / 1e-16, static_cast<double>(i) / (kCoarse - 1));
  const std::ptrdiff_t nc = kCoarse;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < nc; ++i) val[i] = score(cand[i]);

  int best = 0;
  for (int i = 1; i < kCoarse; ++i)
    if (val[i] < val[best]) best = i;
  require(std::isfinite(val[best]), "region-empty",
          "no admissible cut found: " + first_error);

  // Golden-section refinement between the bracketing neighbors.
  double lo = cand[std::max(best - 1, 0)];
  double hi = cand[std::min(best + 1, kCoarse - 1)];
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = score(x1);
  double f2 = score(x2);
  for (int it = 0; it < 48; ++it) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = score(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = score(x2);
    }
  }
  const double refined = f1 <= f2 ? x1 : x2;
  VFBoundReport best_rep = eval(cand[best]);
  if (std::min(f1, f2) < best_rep.dVF_bound) {
    const VFBoundReport ref_rep = eval(refined);
    if (ref_rep.dVF_bound < best_rep.dVF_bound) best_rep = ref_rep;
  }
  return best_rep;
}

}  // namespace janglab
