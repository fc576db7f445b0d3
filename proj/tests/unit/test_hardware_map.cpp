#include <doctest.h>

#include <Eigen/Dense>

#include "fslsense/errors.hpp"
#include "fslsense/hardware_map.hpp"
#include "helpers.hpp"

using namespace fslsense;
using fslsense::test::pi;

namespace {

CircuitParams resonant() {
  CircuitParams c;
  c.omega_a = 5.0;
  c.omega_b = 4.0;
  c.omega_z = 6.0;
  c.drive_freq = 1.0;
  return c;
}

Eigen::Vector3d targets_of(const EffectiveCouplings& e) {
  return {e.alpha0, e.beta0, e.gamma_bar};
}

// Newton iteration on (g_a, g_b, omega_x) with a finite-difference Jacobian.
CircuitParams invert(Eigen::Vector3d target, CircuitParams c, long n) {
  auto f = [&](const Eigen::Vector3d& x) {
    CircuitParams q = c;
    q.g_a = x(0);
    q.g_b = x(1);
    q.omega_x = x(2);
    return Eigen::Vector3d(targets_of(effective_couplings(q, n)) - target);
  };
  Eigen::Vector3d x(c.g_a, c.g_b, c.omega_x);
  for (int it = 0; it < 100; ++it) {
    const Eigen::Vector3d r = f(x);
    if (r.norm() < 1e-15) break;
    Eigen::Matrix3d j;
    for (int k = 0; k < 3; ++k) {
      Eigen::Vector3d d = Eigen::Vector3d::Zero();
      d(k) = 1e-7 * std::max(1.0, std::fabs(x(k)));
      j.col(k) = (f(x + d) - f(x - d)) / (2.0 * d(k));
    }
    x -= j.fullPivLu().solve(r);
  }
  c.g_a = x(0);
  c.g_b = x(1);
  c.omega_x = x(2);
  return c;
}

}  // namespace

TEST_SUITE("hardware_map") {
  TEST_CASE("resonance residuals") {
    const ResonanceCheck ok = check_resonance(resonant());
    CHECK(ok.pass);
    CHECK(ok.residual_a == 0.0);
    CHECK(ok.residual_b == 0.0);
    CHECK(ok.residual_cross == 0.0);
    CircuitParams bad = resonant();
    bad.omega_b += 1e-3;
    const ResonanceCheck r = check_resonance(bad);
    CHECK_FALSE(r.pass);
    CHECK(r.residual_b == doctest::Approx(1e-3).epsilon(1e-9));
    CHECK(r.residual_cross == doctest::Approx(2.0 * r.residual_a - r.residual_b));
  }

  TEST_CASE("third resonance condition is implied") {
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> u(1.0, 10.0);
    for (int i = 0; i < 100; ++i) {
      CircuitParams c;
      c.omega_a = u(rng);
      c.omega_b = u(rng);
      c.omega_z = u(rng);
      c.drive_freq = u(rng);
      const ResonanceCheck r = check_resonance(c);
      CHECK(r.residual_cross == doctest::Approx(2.0 * r.residual_a - r.residual_b).epsilon(1e-12));
    }
  }

  TEST_CASE("Bessel values") {
    CHECK(bessel_j(0, 0.0) == 1.0);
    CHECK(bessel_j(1, 0.0) == 0.0);
    CHECK(bessel_j(-2, 0.0) == 0.0);
    CHECK(bessel_j(0, 1.0) == doctest::Approx(0.7651976865579666).epsilon(1e-14));
    CHECK(bessel_j(1, 1.0) == doctest::Approx(0.4400505857449335).epsilon(1e-14));
    CHECK(bessel_j(-1, 1.0) == doctest::Approx(-0.4400505857449335).epsilon(1e-14));
    CHECK(bessel_j(-2, 2.5) == doctest::Approx(bessel_j(2, 2.5)).epsilon(1e-15));
    CHECK(bessel_j(1, -1.0) == doctest::Approx(-0.4400505857449335).epsilon(1e-14));
  }

  TEST_CASE("limits of the effective couplings") {
    CircuitParams c = resonant();
    c.g_a = 0.4;
    c.g_b = 0.3;
    c.omega_x = 2.0;
    const EffectiveCouplings e = effective_couplings(c, 10);
    CHECK(e.alpha0 == 0.0);
    CHECK(e.beta0 == 0.0);
    const double ea = 0.16, eb = 0.15;
    CHECK(e.gamma_bar ==
          doctest::Approx(0.5 * std::exp(-0.5 * (ea * ea + eb * eb)) * ea * ea * eb).epsilon(1e-14));
    CircuitParams z = resonant();
    z.drive_amp = 1.3;
    z.omega_x = 2.0;
    const EffectiveCouplings ez = effective_couplings(z, 10);
    CHECK(ez.alpha0 == 0.0);
    CHECK(ez.beta0 == 0.0);
    CHECK(ez.gamma_bar == 0.0);
  }

  TEST_CASE("errors and warnings") {
    CircuitParams c = resonant();
    c.phase = 0.1;
    CHECK_THROWS_AS(effective_couplings(c, 10), UnsupportedConfiguration);
    CircuitParams off = resonant();
    off.omega_b = 4.5;
    CHECK_THROWS_AS(effective_couplings(off, 10), DomainError);
    CircuitParams strong = resonant();
    strong.g_a = 1.0;
    strong.g_b = 0.1;
    strong.drive_amp = 1.0;
    strong.omega_x = 1.0;
    CHECK(effective_couplings(strong, 10).warnings.size() == 1);
  }

  TEST_CASE("gamma is linear in N") {
    CircuitParams c = resonant();
    c.g_a = 0.4;
    c.g_b = -0.3;
    c.drive_amp = 1.5;
    c.omega_x = 20.0;
    const double g10 = effective_couplings(c, 10).gamma;
    CHECK(effective_couplings(c, 30).gamma == doctest::Approx(3.0 * g10).epsilon(1e-15));
  }

  TEST_CASE("circuit tuned to (g, theta, gamma) = (1, 0.2 pi, 0.6) at N = 100") {
    const long n = 100;
    const double th = 0.2 * pi;
    const Eigen::Vector3d target(std::sin(th), std::cos(th), 0.6 / static_cast<double>(n));
    CircuitParams guess = resonant();
    guess.drive_amp = 1.5;  // x = 3: J0 < 0 < J2, so beta0 and gamma_bar share a sign
    guess.g_a = 0.4;
    guess.g_b = -0.4;
    guess.omega_x = -20.0;
    const CircuitParams c = invert(target, guess, n);
    const EffectiveCouplings e = effective_couplings(c, n);
    CHECK(e.warnings.empty());
    CHECK(std::fabs(e.g - 1.0) <= 1e-8);
    CHECK(std::fabs(e.theta - th) <= 1e-8);
    CHECK(std::fabs(e.gamma - 0.6) <= 1e-8);
    const ModelParams p = e.model_params();
    const ModelParams direct(n, th, 0.6, 1.0);
    for (long cell : {1L, 37L, 100L}) {
      const HoppingTriple a = hoppings(p, cell), b = hoppings(direct, cell);
      CHECK(std::fabs(a.v - b.v) <= 1e-7);
      CHECK(std::fabs(a.w - b.w) <= 1e-7);
      CHECK(std::fabs(a.t - b.t) <= 1e-7);
    }
  }

  TEST_CASE("theta from atan2 reproduces the linear amplitudes") {
    std::mt19937_64 rng(62);
    std::uniform_real_distribution<double> u(-0.5, 0.5), d(0.1, 2.0);
    for (int i = 0; i < 50; ++i) {
      CircuitParams c = resonant();
      c.g_a = u(rng);
      c.g_b = u(rng);
      c.drive_amp = d(rng);
      c.omega_x = 10.0 * u(rng);
      const EffectiveCouplings e = effective_couplings(c, 20);
      CHECK(e.theta > -pi);
      CHECK(e.theta <= pi);
      CHECK(e.g * std::sin(e.theta) == doctest::Approx(e.alpha0).epsilon(1e-12));
      CHECK(e.g * std::cos(e.theta) == doctest::Approx(e.beta0).epsilon(1e-12));
    }
  }
}
