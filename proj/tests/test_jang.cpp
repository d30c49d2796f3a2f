#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cmath>

#include "janglab/errors.hpp"
#include "janglab/generators.hpp"
#include "janglab/geometry.hpp"
#include "janglab/jang.hpp"
#include "janglab/masses.hpp"

using namespace janglab;

namespace {

double sch_v(double r, double m) { return (2.0 * m / r) * (2.0 * m / r); }

double sch_fprime(double r, double m) {
  const double x = r / (2.0 * m);
  return 1.0 / ((1.0 - 2.0 * m / r) * x * std::sqrt((1.0 + 2.0 * m / r) * (1.0 + x * x)));
}

double sch_gbar11(double r, double m) {
  const double x = r / (2.0 * m);
  const double g = 1.0 - 2.0 * m / r;
  return (1.0 / (g * g)) * (g + 1.0 / (x * x * (1.0 + 2.0 * m / r) * (1.0 + x * x)));
}

InitialData mink_graph_example(std::size_t pts = 8192) {
  auto grid = RadialGrid::geometric(1e-8, 1e4, pts);
  RadialProfile fp = RadialProfile::tabulate(
      grid, [](double r) { return 0.5 * r * r / (1.0 + r * r * r * r); });
  return minkowski_graph({fp, 3});
}

}  // namespace

TEST_CASE("schwarzschild jang oracle: v, f', gbar11") {
  const InitialData d = schwarzschild_slice(1.0, 3, 4096);
  const auto t0 = std::chrono::steady_clock::now();
  const JangSolution sol = solve_jang_ode(d);
  const auto t1 = std::chrono::steady_clock::now();
  CHECK(std::chrono::duration<double>(t1 - t0).count() < 1.0);

  const auto& x = d.grid()->points();
  double verr = 0.0, ferr = 0.0, gerr = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < 2.05 || x[i] > 100.0) continue;
    verr = std::max(verr, std::abs(sol.v[i] - sch_v(x[i], 1.0)) / sch_v(x[i], 1.0));
    ferr = std::max(ferr,
                    std::abs(sol.f_prime[i] - sch_fprime(x[i], 1.0)) / sch_fprime(x[i], 1.0));
    gerr = std::max(gerr,
                    std::abs(sol.gbar11[i] - sch_gbar11(x[i], 1.0)) / sch_gbar11(x[i], 1.0));
  }
  CHECK(verr <= 1e-6);
  CHECK(ferr <= 1e-6);
  CHECK(gerr <= 1e-6);
  CHECK(sol.v(4.0) == doctest::Approx(0.25).epsilon(1e-6));
  CHECK(sol.cylindrical_end);
}

TEST_CASE("time-symmetric complete data give v = 0, f = const") {
  auto grid = RadialGrid::geometric(1e-6, 1e4, 2048);
  RadialProfile g11 = RadialProfile::tabulate(
      grid, [](double r) { return 1.0 + 0.3 * r * r / (1.0 + r * r * r); });
  RadialProfile rho = RadialProfile::tabulate(grid, [](double r) { return r; });
  RadialProfile zero = RadialProfile::constant(grid, 0.0);
  InitialData d{3, 0.0, BoundaryKind::complete_center, g11, rho, zero, zero};
  const JangSolution sol = solve_jang_ode(d);
  for (std::size_t i = 0; i < sol.v.size(); ++i) {
    CHECK(std::abs(sol.v[i]) <= 1e-13);
    CHECK(std::abs(sol.f[i]) <= 1e-12);
    CHECK(std::abs(sol.h_n[i]) <= 1e-10);
    CHECK(std::abs(sol.h_t[i]) <= 1e-13);
    CHECK(std::abs(sol.q_radial[i]) <= 1e-13);
    CHECK(std::abs(sol.w_radial[i]) <= 1e-13);
  }
}

TEST_CASE("minkowski graph round trip") {
  const InitialData d = mink_graph_example();
  const JangSolution sol = solve_jang_ode(d);

  // v equals the generator slope and f integrates it.
  auto fp_true = [](double r) { return 0.5 * r * r / (1.0 + r * r * r * r); };
  double sup_v = 0.0;
  const auto& x = d.grid()->points();
  for (std::size_t i = 0; i < x.size(); ++i)
    sup_v = std::max(sup_v, std::abs(sol.v[i] - fp_true(x[i])));
  CHECK(sup_v <= 1e-8);  // global ODE error over ~4k checkpoints at 1e-12 local tol

  double sup_fp = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    sup_fp = std::max(sup_fp, std::abs(sol.f_prime[i] - fp_true(x[i])));
  CHECK(sup_fp <= 1e-7);

  // f matches int f' up to the vanishing-at-infinity constant.
  const RadialProfile F = integrate_from(sol.f_prime, x.front());
  double sup_f = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    sup_f = std::max(sup_f, std::abs((sol.f[i] - sol.f.values().back()) -
                                     (F[i] - F.values().back())));
  CHECK(sup_f <= 1e-7);

  // The Jang metric is exactly Euclidean and h matches k.
  for (std::size_t i = 0; i < x.size(); ++i)
    CHECK(std::abs(sol.gbar11[i] - 1.0) <= 1e-8);
  const RadialProfile hk = hk_pointwise_norm(d, sol);
  const std::size_t lo = trimmed_margin(hk.size()), hi = hk.size() - trimmed_margin(hk.size());
  for (std::size_t i = lo; i < hi; ++i) CHECK(std::abs(hk[i]) <= 1e-9);
}

TEST_CASE("trace identity on the three example families") {
  CHECK(trace_identity_sup(schwarzschild_slice(1.0, 3, 8192),
                           solve_jang_ode(schwarzschild_slice(1.0, 3, 8192))) <= 1e-8);
  const InitialData g = mink_graph_example();
  CHECK(trace_identity_sup(g, solve_jang_ode(g)) <= 1e-8);
  const InitialData r = random_dec_example(3u, 3, 8192);
  CHECK(trace_identity_sup(r, solve_jang_ode(r)) <= 1e-8);
}

TEST_CASE("gbar11 (1 - v^2) = g11 exactly") {
  const InitialData d = schwarzschild_slice(0.5, 3, 2048);
  const JangSolution sol = solve_jang_ode(d);
  for (std::size_t i = 0; i < sol.v.size(); ++i) {
    const double lhs = sol.gbar11[i] * (1.0 - sol.v[i] * sol.v[i]);
    CHECK(std::abs(lhs - d.g11[i]) <= 1e-14 * d.g11[i]);
  }
}

TEST_CASE("mass preservation under the jang deformation") {
  for (double m : {1.0, 0.25}) {
    const InitialData d = schwarzschild_slice(m, 3, 4096);
    const JangSolution sol = solve_jang_ode(d);
    const JangMetric jm = jang_metric(d, sol);
    const double mg = hawking_adm_limit(hawking_profile(d.g11, d.rho, 3));
    const double mbar = hawking_adm_limit(hawking_profile(jm.gbar11, jm.rho, 3));
    CHECK(std::abs(mbar - mg) <= 1e-6 * std::max(mg, 1.0));
  }
  const InitialData r = random_dec_example(5u, 3, 4096);
  const JangSolution rsol = solve_jang_ode(r);
  const double mg = hawking_adm_limit(hawking_profile(r.g11, r.rho, 3));
  const double mbar =
      hawking_adm_limit(hawking_profile(jang_metric(r, rsol).gbar11, r.rho, 3));
  CHECK(std::abs(mbar - mg) <= 1e-6 * std::max(mg, 1.0));
}

TEST_CASE("scalar identity residual: trivial case and refinement order") {
  auto grid = RadialGrid::geometric(1e-6, 1e4, 2048);
  RadialProfile one = RadialProfile::constant(grid, 1.0);
  RadialProfile rho = RadialProfile::tabulate(grid, [](double r) { return r; });
  RadialProfile zero = RadialProfile::constant(grid, 0.0);
  InitialData flat{3, 0.0, BoundaryKind::complete_center, one, rho, zero, zero};
  CHECK(scalar_identity_residual(flat, solve_jang_ode(flat)) <= 1e-10);

  auto residual_at = [](std::size_t pts) {
    const InitialData d = schwarzschild_slice(1.0, 3, pts);
    return scalar_identity_residual(d, solve_jang_ode(d));
  };
  const double r1 = residual_at(2048);
  const double r2 = residual_at(4096);
  const double r3 = residual_at(8192);
  CHECK(r1 / r2 >= 3.5);
  CHECK(r2 / r3 >= 3.5);
  CHECK(r3 <= 1e-5);
}

TEST_CASE("scalar identity residual on a random example at 8192 points") {
  const InitialData d = random_dec_example(17u, 3, 8192);
  CHECK(scalar_identity_residual(d, solve_jang_ode(d)) <= 1e-5);
}

TEST_CASE("interior horizons are refused") {
  // Schwarzschild data mislabeled as complete would carry an interior
  // horizon; build data whose expansions cross zero inside instead.
  auto grid = RadialGrid::geometric(0.5, 1e4, 2048);
  RadialProfile g11 = RadialProfile::tabulate(
      grid, [](double r) { return 1.0 / (1.0 - std::min(0.95, 2.0 * 0.4 / r)); });
  RadialProfile rho = RadialProfile::tabulate(grid, [](double r) { return r; });
  RadialProfile zero = RadialProfile::constant(grid, 0.0);
  RadialProfile kt = RadialProfile::tabulate(
      grid, [](double r) { return -1.2 / r * std::exp(-0.5 * (r - 2.0) * (r - 2.0)); });
  InitialData d{3, 0.0, BoundaryKind::complete_center, g11, rho, zero, kt};
  CHECK_THROWS_AS(solve_v(d), numeric_error);
}

TEST_CASE("blow-up rate at the schwarzschild horizon is logarithmic") {
  // Future branch: f ~ -c1 log tau with l = 1; for m=1 the exact constant
  // against arclength distance tau from the horizon is c1 = 2.  A grid
  // geometric in r - 2m resolves the fit window tau in (1e-6, 1e-2).
  const double rh = 2.0;
  std::vector<double> pts(8192);
  // eps0 keeps the relative node spacing near r = 2 far enough above ulp
  // level for finite differencing; tau = 4 sqrt(eps) maps the fit window
  // (4e-4, 1e-1) to eps in (1e-8, 1.25e-3).
  const double eps0 = 1e-9, eps1 = 5e3;
  for (std::size_t k = 0; k < pts.size(); ++k)
    pts[k] = rh * (1.0 + eps0 * std::pow(eps1 / eps0,
                                         static_cast<double>(k) / (pts.size() - 1)));
  const InitialData d = schwarzschild_slice(1.0, 3, RadialGrid::supplied(pts));
  const JangSolution sol = solve_jang_ode(d, JangBranch::future);
  // Closed-form arclength distance to the horizon.
  auto tau_of = [](double r) {
    return std::sqrt(r * (r - 2.0)) +
           2.0 * std::log((std::sqrt(r) + std::sqrt(r - 2.0)) / std::sqrt(2.0));
  };
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  std::size_t cnt = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double tau = tau_of(pts[i]);
    if (tau < 4e-4 || tau > 1e-1) continue;
    const double lx = std::log(tau);
    sx += lx; sy += sol.f[i]; sxx += lx * lx; sxy += lx * sol.f[i]; syy += sol.f[i] * sol.f[i];
    ++cnt;
  }
  REQUIRE(cnt >= 16);
  const double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  const double r2 = (cnt * sxy - sx * sy) * (cnt * sxy - sx * sy) /
                    ((cnt * sxx - sx * sx) * (cnt * syy - sy * sy));
  CHECK(r2 >= 0.999);
  CHECK(slope == doctest::Approx(-2.0).epsilon(0.05));
}

TEST_CASE("horizon branches mirror for time-symmetric data") {
  const InitialData d = schwarzschild_slice(1.0, 3, 2048);
  const RadialProfile vp = solve_v(d, JangBranch::past);
  const RadialProfile vf = solve_v(d, JangBranch::future);
  for (std::size_t i = 0; i < vp.size(); ++i)
    CHECK(std::abs(vp[i] + vf[i]) <= 1e-12);
  CHECK(vp[0] > 0.0);  // past branch anchors at +1

  // Sign of divergence: past branch f -> -inf, future branch f -> +inf.
  const auto [fpp, fp_past] = reconstruct_f(d, vp);
  const auto [fpf, fp_future] = reconstruct_f(d, vf);
  CHECK(fp_past[0] < -1.0);
  CHECK(fp_future[0] > 1.0);
}

TEST_CASE("hk lp norms vanish for graphs and decrease along the sequence") {
  // The graph norm is pure f'' stencil truncation, O(h^4); 16384 points put
  // it under the 1e-10 target.  Exactly time-symmetric data are 0 outright.
  const InitialData g = mink_graph_example(16384);
  const JangSolution gsol = solve_jang_ode(g);
  CHECK(hk_difference_lp(g, gsol, 4.0 * M_PI, 2.0, 1.0) <= 1e-10);
  const RadialProfile ghk = hk_pointwise_norm(g, gsol);
  const std::size_t glo = trimmed_margin(ghk.size()), ghi = ghk.size() - trimmed_margin(ghk.size());
  double gsup = 0.0;
  for (std::size_t i = glo; i < ghi; ++i) gsup = std::max(gsup, ghk[i]);
  CHECK(gsup <= 1e-10);
  // Complete time-symmetric data: v = 0, so h = k = 0 identically.
  const HawkingProfileSpec spec = random_admissible_profile(78u, 3, false);
  auto tsgrid = RadialGrid::geometric(1e-4, 1e4, 2048);
  const InitialData ts = from_hawking_profile(spec, 3, tsgrid);
  CHECK(hk_difference_lp(ts, solve_jang_ode(ts), sphere_area(5.0, 3), 1.0, 1.0) <= 1e-12);

  double prev = std::numeric_limits<double>::infinity();
  for (int j = 2; j <= 6; ++j) {
    const double m = std::pow(2.0, -j);
    const InitialData d = schwarzschild_slice(m, 3, 2048);
    const double val = hk_difference_lp(d, solve_jang_ode(d), 4.0 * M_PI, 2.0, 1.0);
    CHECK(val < prev);
    prev = val;
  }
}

TEST_CASE("stability inequality margin with a test bump") {
  const InitialData d = schwarzschild_slice(0.5, 3, 4096);
  const JangSolution sol = solve_jang_ode(d);
  RadialProfile phi = RadialProfile::tabulate(d.grid(), [](double r) {
    const double t = (std::log(r) - std::log(5.0)) / std::log(4.0);
    return std::abs(t) < 1.0 ? std::exp(-1.0 / (1.0 - t * t)) : 0.0;
  });
  CHECK(stability_margin(d, sol, phi) >= -1e-6);

  const InitialData rnd = random_dec_example(9u, 3, 4096);
  const JangSolution rsol = solve_jang_ode(rnd);
  RadialProfile phi2 = RadialProfile::tabulate(rnd.grid(), [](double r) {
    const double t = (std::log(r) - std::log(20.0)) / std::log(6.0);
    return std::abs(t) < 1.0 ? std::exp(-1.0 / (1.0 - t * t)) : 0.0;
  });
  CHECK(stability_margin(rnd, rsol, phi2) >= -1e-6);
}
