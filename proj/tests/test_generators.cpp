#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "janglab/errors.hpp"
#include "janglab/generators.hpp"
#include "janglab/geometry.hpp"
#include "janglab/masses.hpp"

using namespace janglab;

TEST_CASE("schwarzschild slice closed forms") {
  const InitialData d = schwarzschild_slice(1.0, 3, 2048);
  // Node values carry the closed form exactly; off-node evaluation only to
  // interpolation accuracy.
  const std::size_t i4 = d.grid()->locate(4.0);
  const double r4 = (*d.grid())[i4];
  CHECK(d.g11[i4] == doctest::Approx(r4 / (r4 - 2.0)).epsilon(1e-14));
  CHECK(d.g11(4.0) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(d.boundary == BoundaryKind::both_horizon);
  CHECK(d.r0 == doctest::Approx(2.0));

  auto hor = find_outermost_horizon(d);
  REQUIRE(hor.has_value());
  CHECK(hor->radius == doctest::Approx(2.0).epsilon(1e-6));

  CHECK(adm_quantities(d).mass == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("grid below horizon is rejected") {
  auto grid = RadialGrid::geometric(1.5, 1e4, 64);
  CHECK_THROWS_AS(schwarzschild_slice(1.0, 3, grid), numeric_error);
}

TEST_CASE("hawking profile generator: trivial and Schwarzschild specs") {
  auto grid = RadialGrid::geometric(0.1, 1e4, 2048);
  const InitialData flat =
      from_hawking_profile({0.0, [](double) { return 0.0; }}, 3, grid);
  for (std::size_t i = 0; i < flat.g11.size(); ++i)
    CHECK(flat.g11[i] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(flat.boundary == BoundaryKind::complete_center);

  auto grid2 = RadialGrid::geometric(2.0 * (1.0 + 1e-6), 1e4, 2048);
  const InitialData sch =
      from_hawking_profile({2.0, [](double) { return 1.0; }}, 3, grid2);
  for (std::size_t i = 0; i < sch.g11.size(); ++i) {
    const double r = (*grid2)[i];
    // z'^2 = 2/(r-2), i.e. exactly the Schwarzschild radial coefficient.
    CHECK(sch.g11[i] == doctest::Approx(r / (r - 2.0)).epsilon(1e-12));
  }
  CHECK(sch.boundary == BoundaryKind::both_horizon);
}

TEST_CASE("inadmissible profiles are rejected") {
  auto grid = RadialGrid::geometric(1.0, 1e4, 64);
  // m(r) >= r/2 at the first node.
  CHECK_THROWS_AS(from_hawking_profile({0.0, [](double) { return 0.6; }}, 3, grid),
                  numeric_error);
  // Decreasing profile.
  CHECK_THROWS_AS(
      from_hawking_profile({0.0, [](double r) { return 0.1 / (1.0 + r); }}, 3, grid),
      numeric_error);
}

TEST_CASE("bijection round trip on seeded admissible profiles") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const HawkingProfileSpec spec = random_admissible_profile(seed, 3, true);
    const double m_inf = spec.m(1e4);
    auto grid = default_grid(spec.r_min * (1.0 + kHorizonOffset), std::max(1.0, m_inf), 2048);
    const InitialData d = from_hawking_profile(spec, 3, grid);
    const RadialProfile rec = hawking_profile(d.g11, d.rho, 3);
    double rel = 0.0;
    for (std::size_t i = 0; i < rec.size(); ++i) {
      const double want = spec.m((*grid)[i]);
      rel = std::max(rel, std::abs(rec[i] - want) / std::max(want, 1e-8));
    }
    CHECK(rel <= 1e-8);
  }
}

TEST_CASE("random DEC examples satisfy the advertised invariants") {
  for (std::uint64_t seed = 21; seed <= 26; ++seed) {
    const InitialData d = random_dec_example(seed, 3, 2048);
    CHECK(dec_check(constraint_densities(d)).margin >= -1e-8);
    CHECK(verify_asymptotic_flatness(d).pass);
    CHECK(penrose_check(d).slack >= -1e-8);
  }
}

TEST_CASE("deep well meets its contract") {
  DeepWellParams p;
  p.area = 4.0 * M_PI;
  p.depth = 10.0;
  p.mass_bound = 0.1;
  const InitialData d = deep_well(p, 3, 4096);

  const double mass = adm_quantities(d).energy;
  CHECK(mass < 0.1);
  CHECK(mass > 0.0);

  // Arclength from the boundary to Sigma_A exceeds L.
  const RadialProfile s = to_arclength(d.g11);
  const double r_A = monotone_level(d.rho, area_radius(p.area, 3));
  CHECK(s(r_A) > 10.0);

  // Coarea volume between the r_eps and r_eps/2 levels is at least A_delta L,
  // with r_eps recovered as the level where the Hawking mass is delta/2.
  const RadialProfile mh = hawking_profile(d.g11, d.rho, 3);
  const double r_eps = monotone_level(mh, 0.05);
  RadialProfile vol_integrand = zip(d.rho, d.g11, [](double rho, double g) {
    return rho * rho * std::sqrt(g);
  });
  const double vol = unit_sphere_volume(3) *
                     integral_between(vol_integrand, 0.5 * r_eps, r_eps);
  const double A_delta = sphere_area(d.rho(r_eps), 3);
  CHECK(vol >= A_delta * 10.0);

  CHECK(penrose_check(d).slack >= 0.0);
  CHECK(dec_check(constraint_densities(d)).margin >= -1e-8);
  CHECK(verify_asymptotic_flatness(d).pass);
}

TEST_CASE("shallow deep well matches Schwarzschild outside the well") {
  DeepWellParams p;
  p.area = 4.0 * M_PI;
  p.depth = 0.01;
  p.mass_bound = 0.1;
  const InitialData d = deep_well(p, 3, 2048);
  const double m_inf = adm_quantities(d).energy;
  // Outside ~2 r_eps the profile is exactly the constant-mass slice.
  const double r_eps = monotone_level(hawking_profile(d.g11, d.rho, 3), 0.05);
  const auto& x = d.grid()->points();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < 3.0 * r_eps) continue;
    const double want = 1.0 / (1.0 - 2.0 * m_inf / x[i]);
    CHECK(std::abs(d.g11[i] - want) <= 1e-9 * want);
  }
}

TEST_CASE("deep well rejects infeasible area/mass combinations") {
  DeepWellParams p;
  p.area = 1e-4;
  p.depth = 10.0;
  p.mass_bound = 0.1;
  CHECK_THROWS_AS(deep_well(p, 3, 2048), numeric_error);
}

TEST_CASE("minkowski graphs: trivial slope and zero mass") {
  auto grid = RadialGrid::geometric(1e-6, 1e4, 2048);
  RadialProfile zero = RadialProfile::constant(grid, 0.0);
  const InitialData flat = minkowski_graph({zero, 3});
  for (std::size_t i = 0; i < flat.g11.size(); ++i) {
    CHECK(flat.g11[i] == doctest::Approx(1.0));
    CHECK(flat.kn[i] == 0.0);
    CHECK(flat.kt[i] == 0.0);
  }

  RadialProfile fp = RadialProfile::tabulate(
      grid, [](double r) { return 0.5 * r * r / (1.0 + r * r * r * r); });
  const InitialData d = minkowski_graph({fp, 3});
  CHECK(std::abs(adm_quantities(d).energy) <= 1e-8);
  CHECK(std::abs(adm_quantities(d).k_decay_exponent - 3.0) <= 0.2);

  RadialProfile bad = RadialProfile::tabulate(
      grid, [](double r) { return 2.5 * r * r / (1.0 + r * r * r * r); });
  CHECK_THROWS_AS(minkowski_graph({bad, 3}), numeric_error);
}
