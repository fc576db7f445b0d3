#include <doctest.h>

#include "fslsense/errors.hpp"
#include "fslsense/spectrum.hpp"
#include "helpers.hpp"

using namespace fslsense;
using fslsense::test::pi;

TEST_SUITE("spectrum") {
  TEST_CASE("linear limit: gap is 1 and singular values are sqrt(m)") {
    for (long n : {10L, 100L, 1000L}) {
      for (double th : {0.1, 0.2, 0.3, 0.4}) {
        const SpectrumResult s = spectrum(ModelParams::from_units_of_pi(n, th, 0.0));
        CHECK(std::fabs(s.gap - 1.0) <= 1e-10);
        CHECK_FALSE(s.below_numeric_floor);
        CHECK_FALSE(s.refined);
        CHECK(s.log_gap == doctest::Approx(std::log(s.gap)));
      }
    }
    const SpectrumResult s = spectrum(ModelParams::from_units_of_pi(50, 0.3, 0.0, 1.7));
    for (std::size_t i = 0; i < s.singular_values.size(); ++i)
      CHECK(s.singular_values[i] == doctest::Approx(1.7 * std::sqrt(50.0 - i)).epsilon(1e-12));
  }

  TEST_CASE("single excitation") {
    CHECK(gap(ModelParams(1, 0.0, 0.0, 2.0)) == doctest::Approx(2.0).epsilon(1e-15));
  }

  TEST_CASE("singular values are sorted and nonnegative") {
    for (const auto& p : test::random_points(10, 31)) {
      const SpectrumResult s = spectrum(ModelParams(150, p.theta, p.gamma));
      CHECK(s.singular_values.size() == 150);
      CHECK(s.gap == s.singular_values.back());
      for (std::size_t i = 0; i + 1 < s.singular_values.size(); ++i)
        CHECK(s.singular_values[i] >= s.singular_values[i + 1]);
      CHECK(s.singular_values.back() >= 0.0);
    }
  }

  TEST_CASE("dense eigensolve: +/- pairs, one zero, gap agreement") {
    for (const auto& p : test::random_points(12, 32)) {
      const ModelParams mp(50, p.theta, p.gamma);
      const FullSpectrum fs = full_spectrum_oracle(mp);
      const Eigen::Index m = fs.eigenvalues.size();
      CHECK(m == 101);
      int zeros = 0;
      for (Eigen::Index i = 0; i < m; ++i) {
        CHECK(std::fabs(fs.eigenvalues(i) + fs.eigenvalues(m - 1 - i)) <= 1e-9);
        if (std::fabs(fs.eigenvalues(i)) <= 1e-10) ++zeros;
      }
      CHECK(zeros == 1);
      CHECK(test::rel(fs.summary.gap, gap(mp)) <= 1e-9);
      const auto sv = spectrum(mp).singular_values;
      for (std::size_t i = 0; i < sv.size(); ++i)
        CHECK(test::rel(sv[i], fs.summary.singular_values[i]) <= 1e-9);
    }
  }

  TEST_CASE("dense eigensolve reproduces the Jaynes-Cummings ladder at gamma = 0") {
    const FullSpectrum fs = full_spectrum_oracle(ModelParams::from_units_of_pi(50, 0.15, 0.0));
    for (long k = 1; k <= 50; ++k) {
      const double e = fs.eigenvalues(fs.eigenvalues.size() - k);
      CHECK(e == doctest::Approx(std::sqrt(51.0 - static_cast<double>(k))).epsilon(1e-10));
    }
    CHECK(fs.summary.gap == doctest::Approx(1.0).epsilon(1e-10));
  }

  TEST_CASE("symmetries of the gap") {
    for (const auto& p : test::random_points(10, 33)) {
      const double a = gap(ModelParams(300, p.theta, p.gamma));
      CHECK(test::rel(a, gap(ModelParams(300, p.theta + pi, -p.gamma))) <= 1e-10);
      CHECK(test::rel(a, gap(ModelParams(300, -p.theta, p.gamma))) <= 1e-10);
    }
  }

  TEST_CASE("exponentially small gaps are refined to high-precision references") {
    // Values from tests/oracle/highprec_reference.py (mpmath, converged in precision).
    struct Case {
      long n;
      double theta_over_pi, gamma, gap;
    };
    const Case cases[] = {
        {554, 0.47, 2.0, 2.9759534131279693835e-11},
        {1304, 0.47, 2.0, 1.3883441820541118682e-24},
        {2000, 0.47, 2.0, 5.896569099672158421e-37},
        {2000, 0.47, 2.1, 1.1295213487493293166e-62},
        {850, 0.47, 3.0, 1.8679825700105425506e-158},
    };
    for (const Case& c : cases) {
      const SpectrumResult s = spectrum(ModelParams::from_units_of_pi(c.n, c.theta_over_pi, c.gamma));
      INFO("N=", c.n, " gamma=", c.gamma);
      CHECK(s.below_numeric_floor);
      CHECK(s.refined);
      CHECK(test::rel(s.gap, c.gap) <= 1e-12);
      CHECK(std::fabs(s.log_gap - std::log(c.gap)) <= 1e-12);
    }
  }

  TEST_CASE("gaps below the double range keep a finite log") {
    const SpectrumResult s = spectrum(ModelParams::from_units_of_pi(2000, 0.47, 3.0));
    CHECK(s.refined);
    CHECK(s.gap == 0.0);
    CHECK(std::isfinite(s.log_gap));
    CHECK(s.log_gap < std::log(1e-300));
  }

  TEST_CASE("moderate gaps are not refined") {
    const SpectrumResult s = spectrum(ModelParams::from_units_of_pi(554, 0.2, 0.92));
    CHECK_FALSE(s.refined);
    CHECK(s.gap == doctest::Approx(0.227605159966334).epsilon(1e-12));
  }

  TEST_CASE("size ceilings") {
    CHECK_THROWS_AS(spectrum(ModelParams(kMaxSvdN + 1, 0.3, 0.1)), SizeLimitError);
    CHECK_THROWS_AS(full_spectrum_oracle(ModelParams(kMaxOracleN + 1, 0.3, 0.1)),
                    SizeLimitError);
  }
}
