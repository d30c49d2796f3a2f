#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>

#include "janglab/calculus.hpp"
#include "janglab/errors.hpp"
#include "janglab/kernels.hpp"
#include "janglab/ode.hpp"

using namespace janglab;

namespace {

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b,
                    std::size_t skip_ends = 0) {
  double m = 0.0;
  for (std::size_t i = skip_ends; i + skip_ends < a.size(); ++i)
    m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("grid invariants") {
  CHECK_THROWS_AS(RadialGrid::uniform(0.0, 1.0, 4), numeric_error);
  CHECK_THROWS_AS(RadialGrid::supplied({0, 1, 2, 3, 4, 5, 6, 5.5}), numeric_error);
  CHECK_THROWS_AS(RadialGrid::supplied({-1, 1, 2, 3, 4, 5, 6, 7}), numeric_error);
  auto g = RadialGrid::geometric(1.0, 100.0, 64);
  CHECK(g->front() == 1.0);
  CHECK(g->back() == 100.0);
  for (std::size_t i = 1; i < g->size(); ++i) CHECK((*g)[i] > (*g)[i - 1]);
}

TEST_CASE("derivative of linear and quadratic is exact") {
  auto g = RadialGrid::geometric(0.5, 20.0, 128);
  auto p1 = RadialProfile::tabulate(g, [](double r) { return r; });
  auto d1 = derivative(p1, 1);
  for (std::size_t i = 0; i < d1.size(); ++i) CHECK(d1[i] == doctest::Approx(1.0).epsilon(1e-12));

  auto p2 = RadialProfile::tabulate(g, [](double r) { return r * r; });
  auto d2 = derivative(p2, 2);
  for (std::size_t i = 0; i < d2.size(); ++i) CHECK(d2[i] == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("derivative of sin on 2048 uniform points") {
  auto g = RadialGrid::uniform(0.0, 10.0, 2048);
  auto p = RadialProfile::tabulate(g, [](double r) { return std::sin(r); });
  auto d = derivative(p, 1);
  double err = 0.0;
  // Interior nodes only: the first/last two carry one-sided stencils.
  for (std::size_t i = 2; i + 2 < d.size(); ++i)
    err = std::max(err, std::abs(d[i] - std::cos((*g)[i])));
  CHECK(err <= 1e-9);
}

TEST_CASE("integrate_from closed forms") {
  auto g = RadialGrid::uniform(0.0, 4.0, 1024);
  auto one = RadialProfile::constant(g, 1.0);
  auto F = integrate_from(one, 0.0);
  for (std::size_t i = 0; i < F.size(); ++i)
    CHECK(F[i] == doctest::Approx((*g)[i]).epsilon(1e-13));

  auto lin = RadialProfile::tabulate(g, [](double r) { return 2.0 * r; });
  auto F2 = integrate_from(lin, 1.0);
  for (std::size_t i = 0; i < F2.size(); ++i) {
    const double want = (*g)[i] * (*g)[i] - 1.0;
    CHECK(std::abs(F2[i] - want) <= 1e-10 * std::max(1.0, std::abs(want)));
  }

  auto ge = RadialGrid::uniform(1.0, std::exp(1.0), 2048);
  auto inv = RadialProfile::tabulate(ge, [](double r) { return 1.0 / r; });
  auto F3 = integrate_from(inv, 1.0);
  CHECK(std::abs(F3.values().back() - 1.0) <= 1e-9);
}

TEST_CASE("integrate_from rejects anchor outside the grid") {
  auto g = RadialGrid::uniform(1.0, 2.0, 16);
  auto p = RadialProfile::constant(g, 1.0);
  CHECK_THROWS_AS(integrate_from(p, 0.5), numeric_error);
}

TEST_CASE("to_arclength closed forms") {
  auto g = RadialGrid::uniform(1.0, 5.0, 256);
  auto flat = RadialProfile::constant(g, 1.0);
  auto s = to_arclength(flat);
  for (std::size_t i = 0; i < s.size(); ++i)
    CHECK(s[i] == doctest::Approx((*g)[i] - 1.0).epsilon(1e-12));

  auto four = RadialProfile::constant(g, 4.0);
  auto s2 = to_arclength(four);
  for (std::size_t i = 0; i < s2.size(); ++i)
    CHECK(s2[i] == doctest::Approx(2.0 * ((*g)[i] - 1.0)).epsilon(1e-12));

  auto neg = RadialProfile::tabulate(g, [](double r) { return r - 3.0; });
  CHECK_THROWS_AS(to_arclength(neg), numeric_error);
}

TEST_CASE("to_arclength matches the Schwarzschild closed form") {
  auto g = RadialGrid::geometric(2.25, 10.0, 4096);
  auto g11 = RadialProfile::tabulate(g, [](double r) { return 1.0 / (1.0 - 2.0 / r); });
  auto s = to_arclength(g11);
  auto closed = [](double r) {
    return std::sqrt(r * (r - 2.0)) +
           2.0 * std::log((std::sqrt(r) + std::sqrt(r - 2.0)) / std::sqrt(2.0));
  };
  const double shift = closed(2.25);
  double rel = 0.0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    const double want = closed((*g)[i]) - shift;
    rel = std::max(rel, std::abs(s[i] - want) / want);
  }
  CHECK(rel <= 1e-8);
  for (std::size_t i = 1; i < s.size(); ++i) CHECK(s[i] > s[i - 1]);
}

TEST_CASE("derivative of cumulative integral converges at order >= 3.5") {
  auto err_at = [](std::size_t n) {
    auto g = RadialGrid::uniform(1.0, 5.0, n);
    auto p = RadialProfile::tabulate(g, [](double r) { return std::exp(-r) * std::sin(2 * r); });
    auto F = integrate_from(p, 1.0);
    auto back = derivative(F, 1);
    return max_abs_diff(back.values(), p.values(), 3);
  };
  const double e1 = err_at(512), e2 = err_at(1024);
  CHECK(e1 / e2 >= std::pow(2.0, 3.5));
}

TEST_CASE("resampling reproduces values to interpolation order") {
  auto g = RadialGrid::uniform(1.0, 3.0, 512);
  auto fine = RadialGrid::uniform(1.0, 3.0, 777);
  auto p = RadialProfile::tabulate(g, [](double r) { return std::cos(3.0 * r) / r; });
  auto back = resample(resample(p, fine), g);
  CHECK(max_abs_diff(back.values(), p.values()) <= 1e-8);
}

TEST_CASE("monotone interpolation does not overshoot") {
  auto g = RadialGrid::supplied({1, 2, 3, 4, 5, 6, 7, 8});
  RadialProfile p(g, {0, 0, 0, 1, 1, 1, 1, 1}, Interp::monotone);
  for (double r = 1.0; r <= 7.9; r += 0.05) {
    CHECK(p(r) >= -1e-15);
    CHECK(p(r) <= 1.0 + 1e-15);
  }
  for (double r = 1.0; r <= 7.8; r += 0.05) CHECK(p(r + 0.05) >= p(r) - 1e-15);
}

TEST_CASE("off-grid evaluation outside the range is an error") {
  auto g = RadialGrid::uniform(1.0, 2.0, 16);
  auto p = RadialProfile::constant(g, 1.0);
  CHECK_THROWS_AS(p(0.99), numeric_error);
  CHECK_THROWS_AS(p(2.01), numeric_error);
}

TEST_CASE("decay exponent fits") {
  auto g = RadialGrid::geometric(1.0, 1e4, 512);
  auto p = RadialProfile::tabulate(g, [](double r) { return std::pow(r, -3.0); });
  CHECK(fit_decay_exponent(p, 10.0, 1e4) == doctest::Approx(3.0).epsilon(1e-6));

  auto q = RadialProfile::tabulate(g, [](double r) { return std::pow(r, -3.0) * (1 + 1 / r); });
  CHECK(std::abs(fit_decay_exponent(q, 100.0, 1000.0) - 3.0) <= 0.02);

  auto z = RadialProfile::tabulate(g, [](double r) { return 5000.0 - r; });
  CHECK_THROWS_AS(fit_decay_exponent(z, 1.0, 1e4), numeric_error);
}

TEST_CASE("serial and parallel kernels agree bitwise") {
  auto g = RadialGrid::geometric(0.3, 300.0, 4099);
  auto p = RadialProfile::tabulate(g, [](double r) { return std::sin(r) / (1.0 + r); });

  kernels::set_parallel(true);
  auto d_par = derivative(p, 1).values();
  auto i_par = integrate_from(p, 1.0).values();
  auto s_par = to_arclength(map(p, [](double v) { return 2.0 + v; })).values();

  kernels::set_parallel(false);
  auto d_ser = derivative(p, 1).values();
  auto i_ser = integrate_from(p, 1.0).values();
  auto s_ser = to_arclength(map(p, [](double v) { return 2.0 + v; })).values();
  kernels::set_parallel(true);

  CHECK(std::memcmp(d_par.data(), d_ser.data(), d_par.size() * sizeof(double)) == 0);
  CHECK(std::memcmp(i_par.data(), i_ser.data(), i_par.size() * sizeof(double)) == 0);
  CHECK(std::memcmp(s_par.data(), s_ser.data(), s_par.size() * sizeof(double)) == 0);
}

TEST_CASE("adaptive ODE integrator hits 1e-10 on a decaying solution") {
  auto g = RadialGrid::geometric(2.0, 100.0, 512);
  auto rhs = [](double x, double y) { return -2.0 * y / x; };
  auto res = integrate_ode(rhs, 2.0, 1.0, g->points());
  CHECK(!res.stopped);
  double err = 0.0;
  for (std::size_t i = 0; i < g->size(); ++i)
    err = std::max(err, std::abs(res.y[i] - 4.0 / ((*g)[i] * (*g)[i])));
  CHECK(err <= 1e-10);
}

TEST_CASE("aitken accelerates geometric tails") {
  // f(rho) = 1 + 3/rho sampled at radii 10, 40, 160.
  const double e = aitken_limit(1.3, 1.075, 1.01875);
  CHECK(e == doctest::Approx(1.0).epsilon(1e-12));
}
