#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "janglab/errors.hpp"
#include "janglab/flat_distance.hpp"
#include "janglab/generators.hpp"
#include "janglab/geometry.hpp"

using namespace janglab;

namespace {

JangMetric flat_metric(std::size_t pts = 2048) {
  auto grid = RadialGrid::geometric(1e-8, 1e4, pts);
  return {RadialProfile::constant(grid, 1.0),
          RadialProfile::tabulate(grid, [](double r) { return r; }),
          3,
          0.0,
          BoundaryKind::complete_center,
          false};
}

struct Pipeline {
  InitialData d;
  JangMetric jm;
  ConformalData cd;
};

Pipeline schwarzschild_pipeline(double m, std::size_t pts = 2048) {
  InitialData d = schwarzschild_slice(m, 3, pts);
  const JangSolution sol = solve_jang_ode(d);
  JangMetric jm = jang_metric(d, sol);
  ConformalData cd = conformal_factor(jm);
  return {std::move(d), std::move(jm), std::move(cd)};
}

}  // namespace

TEST_CASE("euclidean region geometry") {
  const JangMetric jm = flat_metric();
  const RegionGeometry geo = region_geometry(jm, {4.0 * M_PI, 2.0, std::nullopt});
  CHECK(geo.rho_A == doctest::Approx(1.0));
  CHECK(geo.vol_tube == doctest::Approx(4.0 * M_PI / 3.0).epsilon(1e-9));
  CHECK(geo.area_A == doctest::Approx(4.0 * M_PI));
  CHECK(geo.depth == doctest::Approx(1.0).epsilon(1e-8));  // tube reaches the center
  CHECK(geo.diam_bound_cap == doctest::Approx(8.0 * M_PI));

  // Excess volume at the A_eps = pi cut is the inner ball, below D A_eps.
  const ConformalData cd = conformal_factor(jm);
  const VFBoundReport rep = vf_bound(jm, cd, {4.0 * M_PI, 2.0, M_PI});
  CHECK(rep.vol_excess == doctest::Approx(M_PI / 6.0).epsilon(1e-6));
  CHECK(rep.vol_excess <= 2.0 * M_PI);
}

TEST_CASE("level-not-found for unattained areas") {
  const Pipeline p = schwarzschild_pipeline(1.0);
  // Areas on this exterior grid start at 16 pi.
  CHECK_THROWS_AS(region_geometry(p.jm, {4.0 * M_PI, 2.0, std::nullopt}), numeric_error);
}

TEST_CASE("schwarzschild tube volume approaches the euclidean ball") {
  const Pipeline p = schwarzschild_pipeline(0.01, 4096);
  const RegionGeometry geo = region_geometry(p.jm, {4.0 * M_PI, 2.0, std::nullopt});
  CHECK(std::abs(geo.vol_tube - 4.0 * M_PI / 3.0) <= 0.05 * (4.0 * M_PI / 3.0));
}

TEST_CASE("epsilon on the annulus") {
  const JangMetric jm = flat_metric();
  ConformalData cd = conformal_factor(jm);
  CHECK(epsilon_on_annulus(jm, cd, M_PI, 4.0 * M_PI) == doctest::Approx(0.0).epsilon(1e-12));

  // Constant u = 1.1^{(n-2)/2}, i.e. log_ratio = log 1.1: epsilon is 0.1.
  ConformalData scaled = cd;
  scaled.log_ratio = RadialProfile::constant(jm.rho.grid(), std::log(1.1));
  scaled.u = RadialProfile::constant(jm.rho.grid(), std::sqrt(1.1));
  CHECK(epsilon_on_annulus(jm, scaled, M_PI, 4.0 * M_PI) ==
        doctest::Approx(0.1).epsilon(1e-12));

  // epsilon = O(m^{1/4}) would be the paper's bound; the exact factors obey
  // the far weaker requirement of monotone decrease along the sequence.
  double prev = std::numeric_limits<double>::infinity();
  for (double m : {0.1, 0.01, 0.001}) {
    const Pipeline p = schwarzschild_pipeline(m);
    const double eps = epsilon_on_annulus(p.jm, p.cd, M_PI, 4.0 * M_PI);
    CHECK(eps < prev);
    prev = eps;
  }
}

TEST_CASE("lambda bound formula") {
  const LambdaBound z = lambda_bound(0.0, 0.0, 2.0, 8.0 * M_PI);
  CHECK(z.lambda == 0.0);
  CHECK(z.Lambda == 0.0);

  const LambdaBound h = lambda_bound(0.01, 0.1, 2.0, 8.0 * M_PI);
  CHECK(h.lambda == doctest::Approx(1.01 * M_PI * 0.1 + 0.08 * M_PI));
  CHECK(h.Lambda == doctest::Approx(std::sqrt(2.0 * h.lambda * 8.0 * M_PI)));

  // The 2 D0 cap always applies.
  const LambdaBound c = lambda_bound(50.0, 100.0, 2.0, 1.0);
  CHECK(c.lambda == doctest::Approx(2.0));
}

TEST_CASE("formula-level monotonicity in epsilon") {
  double prev_lambda = -1.0, prev_Lambda = -1.0, prev_omega = -1.0;
  for (double eps = 0.0; eps <= 0.5; eps += 0.01) {
    const LambdaBound lb = lambda_bound(eps, 0.3, 2.0, 10.0);
    const double om = std::acos(1.0 / (1.0 + eps)) / M_PI * 10.0;
    CHECK(lb.lambda >= prev_lambda);
    CHECK(lb.Lambda >= prev_Lambda);
    CHECK(om >= prev_omega);
    prev_lambda = lb.lambda;
    prev_Lambda = lb.Lambda;
    prev_omega = om;
  }
}

TEST_CASE("vf bound report sanity and sequence decrease") {
  const Pipeline coarse = schwarzschild_pipeline(0.1);
  const VFBoundReport a = optimize_cut(coarse.jm, coarse.cd, 4.0 * M_PI, 2.0);
  const Pipeline fine = schwarzschild_pipeline(0.01);
  const VFBoundReport b = optimize_cut(fine.jm, fine.cd, 4.0 * M_PI, 2.0);

  for (const VFBoundReport* rep : {&a, &b}) {
    CHECK(std::isfinite(rep->dVF_bound));
    CHECK(rep->epsilon >= 0.0);
    CHECK(rep->omega >= 0.0);
    CHECK(rep->lambda >= 0.0);
    CHECK(rep->Lambda >= 0.0);
    CHECK(rep->vol_W >= 0.0);
    CHECK(rep->vol_excess >= 0.0);
    CHECK(rep->dF_bound >= 0.0);
    CHECK(rep->dVF_bound == doctest::Approx(rep->dF_bound + rep->vol_diff));
  }
  CHECK(b.dVF_bound < a.dVF_bound);
}

TEST_CASE("volume difference obeys the coarea bound") {
  const Pipeline p = schwarzschild_pipeline(0.01, 4096);
  const VFBoundReport rep = vf_bound(p.jm, p.cd, {4.0 * M_PI, 2.0, 0.5 * M_PI});
  const double eps = rep.epsilon;
  const double bound = (std::pow(1.0 + eps, 3) - 1.0) * 2.0 * 4.0 * M_PI +
                       2.0 * 2.0 * std::pow(1.0 + eps, 2) * rep.A_eps;
  CHECK(rep.vol_diff <= bound);
  // Vol(W) <= D A for all computed regions.
  CHECK(rep.vol_W <= 2.0 * 4.0 * M_PI);
}

TEST_CASE("optimizer against an exhaustive scan") {
  const Pipeline p = schwarzschild_pipeline(0.01);
  const VFBoundReport opt = optimize_cut(p.jm, p.cd, 4.0 * M_PI, 2.0);

  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 512; ++i) {
    const double a_eps = 4.0 * M_PI * 1e-12 *
                         std::pow(0.5 / 1e-12, static_cast<double>(i) / 511.0);
    const VFBoundReport rep = vf_bound(p.jm, p.cd, {4.0 * M_PI, 2.0, a_eps});
    best = std::min(best, rep.dVF_bound);
  }
  CHECK(opt.dVF_bound <= best * 1.05);

  const VFBoundReport half = vf_bound(p.jm, p.cd, {4.0 * M_PI, 2.0, 2.0 * M_PI});
  CHECK(opt.dVF_bound <= half.dVF_bound);
}

TEST_CASE("euclidean optimizer drives the cut to the floor") {
  const JangMetric jm = flat_metric();
  const ConformalData cd = conformal_factor(jm);
  const VFBoundReport rep = optimize_cut(jm, cd, 4.0 * M_PI, 2.0);
  CHECK(rep.A_eps <= 4.0 * M_PI * 1e-10);
  // Floor set by the innermost grid sphere: Lambda ~ sqrt(2 pi rho_min D0).
  CHECK(rep.dVF_bound <= 0.05);

  // The bound decreases as the cut shrinks.
  double prev = std::numeric_limits<double>::infinity();
  for (double a_eps : {1e-2, 1e-5, 1e-8}) {
    const VFBoundReport r = vf_bound(jm, cd, {4.0 * M_PI, 2.0, a_eps * 4.0 * M_PI});
    CHECK(r.dVF_bound < prev);
    prev = r.dVF_bound;
  }
}
