#include <doctest.h>

#include "fslsense/errors.hpp"
#include "fslsense/metrology.hpp"
#include "fslsense/spectrum.hpp"
#include "helpers.hpp"

using namespace fslsense;
using fslsense::test::pi;
using fslsense::test::rel;

TEST_SUITE("metrology") {
  TEST_CASE("linear limit F = 4N") {
    for (long n : {1L, 10L, 100L, 1000L}) {
      for (double th : {0.0, 0.1, 0.2, 0.25, 0.3, 0.4}) {
        const double f = qfi(ModelParams::from_units_of_pi(n, th, 0.0)).qfi;
        CHECK(rel(f, 4.0 * static_cast<double>(n)) <= 1e-8);
      }
    }
  }

  TEST_CASE("QFI increases with N at gamma = 0") {
    double prev = 0.0;
    for (long n = 1; n <= 64; n *= 2) {
      const double f = qfi(ModelParams::from_units_of_pi(n, 0.3, 0.0)).qfi;
      CHECK(f > prev);
      prev = f;
    }
  }

  TEST_CASE("spectral QFI") {
    CHECK(rel(qfi_spectral(ModelParams::from_units_of_pi(50, 0.2, 0.0)).qfi, 200.0) <= 1e-8);
    CHECK(rel(qfi_spectral(ModelParams(50, 0.0, 0.0)).qfi, 200.0) <= 1e-8);
    for (const auto& s : test::random_points(20, 41)) {
      const ModelParams p(60, s.theta, s.gamma);
      CHECK(rel(qfi_spectral(p).qfi, qfi(p).qfi) <= 1e-7);
    }
    CHECK_THROWS_AS(qfi_spectral(ModelParams(kMaxOracleN + 1, 0.2, 0.1)), SizeLimitError);
  }

  TEST_CASE("three QFI routes agree") {
    for (const auto& s : test::random_points(20, 42)) {
      const ModelParams p(60, s.theta, s.gamma);
      const double a = qfi(p).qfi;
      CHECK(rel(a, qfi_finite_difference(p).qfi) <= 1e-5);
      CHECK(rel(a, qfi_spectral(p).qfi) <= 1e-5);
    }
  }

  TEST_CASE("photon counting saturates the QFI") {
    CHECK(rel(*cfi_photon_number(ModelParams::from_units_of_pi(100, 0.25, 0.0)).cfi, 400.0) <=
          1e-5);
    // Point mass at theta = 0: the limit form gives 4N.
    CHECK(rel(*cfi_photon_number(ModelParams(100, 0.0, 0.0)).cfi, 400.0) <= 1e-5);
    for (const auto& s : test::random_points(50, 43)) {
      const FisherResult r = cfi_photon_number(ModelParams(100, s.theta, s.gamma));
      REQUIRE(r.cfi.has_value());
      CHECK(rel(*r.cfi, r.qfi) <= 1e-5);
      CHECK(r.qfi >= 0.0);
    }
    CHECK_THROWS_AS(cfi_photon_number(ModelParams(10, 0.3, 0.1), 1e-1), DomainError);
    CHECK_THROWS_AS(cfi_photon_number(ModelParams(10, 0.3, 0.1), 1e-9), DomainError);
  }

  TEST_CASE("linear-limit closed forms") {
    const LinearLimit a = linear_limit_closed_forms(ModelParams::from_units_of_pi(100, 0.25, 0.0));
    CHECK(a.qfi == doctest::Approx(400.0));
    CHECK(a.mean == doctest::Approx(50.0));
    CHECK(a.variance == doctest::Approx(25.0));
    const LinearLimit b = linear_limit_closed_forms(ModelParams(9, 0.0, 0.0));
    CHECK(b.qfi == 36.0);
    CHECK(b.mean == 0.0);
    CHECK(b.variance == 0.0);
    const double s2 = std::pow(std::sin(0.2 * pi), 2);
    const LinearLimit c = linear_limit_closed_forms(ModelParams::from_units_of_pi(64, 0.2, 0.0));
    CHECK(c.qfi == doctest::Approx(256.0));
    CHECK(c.mean == doctest::Approx(64.0 * s2));
    CHECK(c.variance == doctest::Approx(64.0 * s2 * (1.0 - s2)));
    CHECK_THROWS_AS(linear_limit_closed_forms(ModelParams(9, 0.2, 0.1)), DomainError);
  }

  TEST_CASE("local-encoding bound holds") {
    for (const auto& s : test::random_points(15, 44)) {
      for (long n : {20L, 150L}) {
        const ModelParams p(n, s.theta, s.gamma);
        CHECK(qfi(p).qfi <= qfi_benchmark_bound(p) * (1.0 + 1e-9));
      }
    }
  }

  TEST_CASE("derivative operator norm") {
    // At gamma = 0 dH/dtheta couples the dark-mode ladder: norm sqrt(N).
    CHECK(dtheta_hamiltonian_norm(ModelParams::from_units_of_pi(49, 0.3, 0.0)) ==
          doctest::Approx(7.0).epsilon(1e-10));
  }

  TEST_CASE("symmetry of the QFI") {
    for (const auto& s : test::random_points(20, 45)) {
      const double f = qfi(ModelParams(200, s.theta, s.gamma)).qfi;
      CHECK(rel(f, qfi(ModelParams(200, s.theta + pi, -s.gamma)).qfi) <= 1e-8);
      CHECK(rel(f, qfi(ModelParams(200, -s.theta, s.gamma)).qfi) <= 1e-8);
    }
  }
}
