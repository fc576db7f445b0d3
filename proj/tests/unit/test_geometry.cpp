#include <doctest.h>

#include "fslsense/errors.hpp"
#include "fslsense/geometry.hpp"
#include "fslsense/topology.hpp"
#include "helpers.hpp"

using namespace fslsense;
using fslsense::test::pi;

namespace {

// Intersections of the continuum curve with y = x - 1 for x > 2, counted as
// sign changes of y(x) - (x - 1) on a fine grid.
int w2_intersections(double theta, double gamma) {
  int count = 0;
  double prev = continuum_y_of_x(theta, gamma, 2.0) - 1.0;
  for (int i = 1; i <= 400000; ++i) {
    const double x = 2.0 + 60.0 * i / 400000.0;
    const double f = continuum_y_of_x(theta, gamma, x) - (x - 1.0);
    if ((f > 0.0) != (prev > 0.0)) ++count;
    prev = f;
  }
  return count;
}

}  // namespace

TEST_SUITE("geometry") {
  TEST_CASE("cubic solver") {
    auto roots = solve_cubic(1, -6, 11, -6);
    REQUIRE(roots.size() == 3);
    std::sort(roots.begin(), roots.end());
    CHECK(roots[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(roots[1] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(roots[2] == doctest::Approx(3.0).epsilon(1e-14));
    const auto one = solve_cubic(1, 0, 0, -8);
    REQUIRE(one.size() == 1);
    CHECK(one[0] == doctest::Approx(2.0).epsilon(1e-14));
    const auto triple = solve_cubic(1, -8, 20, -16);
    for (double x : triple) CHECK(std::fabs(x * x * x - 8 * x * x + 20 * x - 16) <= 1e-12);
  }

  TEST_CASE("junction threshold") {
    CHECK(gamma_junction(0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(gamma_junction(pi / 3.0) == doctest::Approx(7.0 / 8.0).epsilon(1e-14));
    CHECK(gamma_junction(std::atan(std::sqrt(32.0))) ==
          doctest::Approx(9.0 / std::sqrt(33.0)).epsilon(1e-14));
    CHECK_THROWS_AS(gamma_junction(0.6 * pi), DomainError);
    CHECK_THROWS_AS(gamma_junction(0.7 * pi), DomainError);
  }

  TEST_CASE("tangency at tan^2 = 32") {
    auto roots = tangency_roots(32.0);
    REQUIRE(roots.size() == 2);
    std::sort(roots.begin(), roots.end());
    CHECK(roots[0] == doctest::Approx(-2.0 + 2.0 * std::sqrt(5.0)).epsilon(1e-13));
    CHECK(roots[1] == doctest::Approx(4.0).epsilon(1e-13));
    const double th = std::atan(std::sqrt(32.0));
    const BoundaryGeometry g = gamma_tangent(th);
    REQUIRE(g.x_t_selected.has_value());
    CHECK(*g.x_t_selected == doctest::Approx(4.0).epsilon(1e-13));
    CHECK(*g.gamma_t == doctest::Approx(9.0 / std::sqrt(33.0)).epsilon(1e-12));
  }

  TEST_CASE("tangency edge and absence") {
    const double th27 = std::atan(std::sqrt(27.0));
    const BoundaryGeometry g = gamma_tangent(th27);
    REQUIRE(g.gamma_t.has_value());
    CHECK(*g.x_t_selected == doctest::Approx(3.0).epsilon(1e-6));
    CHECK(*g.gamma_t == doctest::Approx(8.0 * std::cos(th27)).epsilon(1e-10));
    const BoundaryGeometry none = gamma_tangent(0.3 * pi);
    CHECK_FALSE(none.gamma_t.has_value());
    CHECK(none.x_t_roots.empty());
    CHECK(none.regime == WindowRegime::Favorable);
  }

  TEST_CASE("theta = 0.47 pi is unfavorable") {
    const double th = 0.47 * pi;
    const BoundaryGeometry g = gamma_tangent(th);
    REQUIRE(g.x_t_selected.has_value());
    CHECK(*g.x_t_selected > 9.0);
    CHECK(*g.x_t_selected < 10.0);
    CHECK(*g.gamma_t < g.gamma_j);
    CHECK(g.regime == WindowRegime::Unfavorable);
    const double tan2 = std::pow(std::tan(th), 2);
    for (double x : g.x_t_roots) {
      CHECK(x > 2.0);
      CHECK(test::rel(x * x * x / (x - 2.0), tan2) <= 1e-10);
    }
    const double x = *g.x_t_selected;
    CHECK(*g.gamma_t ==
          doctest::Approx(2.0 * std::cos(th) * (x - 1) * (x - 1) / (x - 2)).epsilon(1e-12));
  }

  TEST_CASE("critical angle") {
    const CriticalAngle c = theta_critical();
    CHECK(c.theta_c_over_pi == doctest::Approx(std::atan(4.0 * std::sqrt(2.0)) / pi).epsilon(1e-14));
    CHECK(std::fabs(c.theta_c_over_pi - 0.4443) <= 1e-4);
    CHECK(std::fabs(c.x_t - 4.0) <= 1e-12);
    CHECK(std::fabs(c.tan2_theta_c - 32.0) <= 1e-12 * 32.0);
    CHECK(c.residual <= 1e-12);
    CHECK(std::fabs(gamma_junction(c.theta_c) - *gamma_tangent(c.theta_c).gamma_t) <= 1e-10);
    CHECK(c.gamma_c == doctest::Approx(9.0 / std::sqrt(33.0)).epsilon(1e-12));
  }

  TEST_CASE("curve touches the W=-2 line exactly at gamma_t") {
    for (double th_pi : {0.45, 0.47, 0.48}) {
      const double th = th_pi * pi;
      const double gt = *gamma_tangent(th).gamma_t;
      INFO("theta/pi=", th_pi);
      CHECK(w2_intersections(th, gt * (1.0 - 1e-3)) == 0);
      CHECK(w2_intersections(th, gt * (1.0 + 1e-3)) == 2);
    }
  }

  TEST_CASE("regime switches at theta_c") {
    const double tc = theta_critical().theta_c;
    CHECK(gamma_tangent(tc - 0.01 * pi).regime == WindowRegime::Favorable);
    CHECK(gamma_tangent(tc + 0.01 * pi).regime == WindowRegime::Unfavorable);
  }
}
