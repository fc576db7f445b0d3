// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "fslsense/errors.hpp"
#include "fslsense/geometry.hpp"
#include "fslsense/metrology.hpp"
#include "fslsense/parallel.hpp"
#include "fslsense/scaling.hpp"
#include "fslsense/spectrum.hpp"
#include "fslsense/topology.hpp"
#include "fslsense/zero_mode.hpp"

using namespace fslsense;

namespace {

constexpr double pi = std::numbers::pi;

double rel(double a, double b) {
  const double s = std::max(std::fabs(a), std::fabs(b));
  return s == 0.0 ? 0.0 : std::fabs(a - b) / s;
}

struct Sample {
  double theta, gamma;
};

std::vector<Sample> samples(int count, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> th(-0.44, 0.44), ga(0.0, 1.2);
  std::vector<Sample> out;
  for (int i = 0; i < count; ++i) out.push_back({th(rng) * pi, ga(rng)});
  return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
  if (!pass) ++failures;
  fmt::print("criterion {:2d}: {} {}\n", id, pass ? "PASS" : "FAIL", detail);
  std::fflush(stdout);
}

double root_distance(double v, double w, double t) {
  if (t == 0.0) return w == 0.0 ? 1.0 : std::fabs(std::fabs(v / w) - 1.0);
  const std::complex<double> d = std::sqrt(std::complex<double>(w * w - 4.0 * t * v, 0.0));
  const std::complex<double> r1 = (-w + d) / (2.0 * t), r2 = (-w - d) / (2.0 * t);
  return std::min(std::fabs(std::abs(r1) - 1.0), std::fabs(std::abs(r2) - 1.0));
}

void criterion_1() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (long n : {10L, 100L, 1000L})
    for (double th : {0.1, 0.2, 0.3, 0.4})
      worst = std::max(worst, rel(qfi(ModelParams::from_units_of_pi(n, th, 0.0)).qfi, 4.0 * n));
  const double dt = seconds_since(t0);
  report(1, worst <= 1e-8 && dt < 1.0,
         fmt::format("linear-limit QFI: max rel err {:.2e} (tol 1e-8), {:.3f} s (limit 1 s)", worst, dt));
}

void criterion_2() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (long n : {10L, 100L, 1000L})
    for (double th : {0.1, 0.2, 0.3, 0.4})
      worst = std::max(worst, std::fabs(gap(ModelParams::from_units_of_pi(n, th, 0.0)) - 1.0));
  const double dt = seconds_since(t0);
  report(2, worst <= 1e-10 && dt < 30.0,
         fmt::format("linear-limit gap: max |gap-1| {:.2e} (tol 1e-10), {:.3f} s (limit 30 s)", worst, dt));
}

void criterion_3() {
  double p_err = 0.0, mean_err = 0.0, var_err = 0.0;
  for (long n : {10L, 100L, 1000L}) {
    for (double th : {0.1, 0.2, 0.25, 0.3, 0.4}) {
      const auto p = probabilities(solve_zero_mode(ModelParams::from_units_of_pi(n, th, 0.0)));
      const double s2 = std::pow(std::sin(th * pi), 2);
      double mean = 0.0, second = 0.0;
      for (long k = 0; k <= n; ++k) {
        const double lg = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
        const double ref = std::exp(lg + k * std::log(s2) + (n - k) * std::log1p(-s2));
        const double pk = p[static_cast<std::size_t>(k)];
        p_err = std::max(p_err, std::fabs(pk - ref));
        mean += static_cast<double>(k) * pk;
        second += static_cast<double>(k) * static_cast<double>(k) * pk;
      }
      mean_err = std::max(mean_err, rel(mean, n * s2));
      var_err = std::max(var_err, rel(second - mean * mean, n * s2 * (1.0 - s2)));
    }
  }
  report(3, p_err <= 1e-10 && mean_err <= 1e-10 && var_err <= 1e-8,
         fmt::format("binomial zero mode: max |P-Binom| {:.2e} (tol 1e-10), mean rel {:.2e}, "
                     "variance rel {:.2e}",
                     p_err, mean_err, var_err));
}

void criterion_4() {
  const auto t0 = std::chrono::steady_clock::now();
  const TradeoffPoint p = scan_c1_c2(0.2 * pi, 0.92, default_n_grid(), default_jobs());
  const bool c1_ok = p.c1 >= 1.49 && p.c1 <= 1.79;
  const bool c2_ok = p.c2.has_value() && *p.c2 >= -0.48 && *p.c2 <= -0.18;
  report(4, c1_ok && c2_ok,
         fmt::format("theta=0.2pi gamma=0.92: c1 = {:.4f} in [1.49, 1.79], c2 = {} in [-0.48, -0.18] "
                     "({}), {:.2f} s",
                     p.c1, p.c2 ? fmt::format("{:.4f}", *p.c2) : "none",
                     to_string(p.gap_regime), seconds_since(t0)));
}

// Every power-law point of the gamma sweep through the operating point,
// gamma in [0, 1.2] at theta = 0.2 pi.
void criterion_11() {
  std::vector<double> grid;
  for (int i = 0; i <= 12; ++i) grid.push_back(0.1 * i);
  grid.push_back(0.92);
  std::sort(grid.begin(), grid.end());
  const GammaSweep s = gamma_sweep(0.2 * pi, grid, default_n_grid(), default_jobs());
  int checked = 0, violations = 0;
  double worst = HUGE_VAL, worst_gamma = 0.0;
  for (const TradeoffPoint& t : s.points) {
    if (t.gap_regime != Regime::PowerLaw) continue;
    ++checked;
    const double margin = *t.c2 + t.c1 / 2.0;
    if (margin < -0.05) ++violations;
    if (margin < worst) {
      worst = margin;
      worst_gamma = t.gamma;
    }
  }
  report(11, checked > 0 && violations == 0,
         fmt::format("{} power-law points, {} below the bound; min (c2 + c1/2) = {:.4f} at gamma = {:.2f} "
                     "(must be >= -0.05)",
                     checked, violations, worst, worst_gamma));
}

void criterion_5() {
  const int jobs = default_jobs();
  const TradeoffPoint h = scan_c1_c2(0.47 * pi, 3.0, default_n_grid(), jobs);
  const TradeoffPoint u = scan_c1_c2(0.47 * pi, 2.1, default_n_grid(), jobs);
  const bool h_ok = std::fabs(h.c1 - 2.0) <= 0.15 && h.gap_regime == Regime::Exponential;
  const bool u_ok = std::fabs(u.c1 - 1.0) <= 0.15 && u.gap_regime == Regime::Exponential;
  report(5, h_ok && u_ok,
         fmt::format("theta=0.47pi: gamma=3 c1 = {:.4f} (2.0 +/- 0.15) gap {} [{}]; gamma=2.1 c1 = {:.4f} "
                     "(1.0 +/- 0.15) gap {} [{}]",
                     h.c1, to_string(h.gap_regime), h_ok ? "ok" : "out", u.c1,
                     to_string(u.gap_regime), u_ok ? "ok" : "out"));
}

void criterion_6() {
  double worst = 0.0;
  for (const Sample& s : samples(50, 6)) {
    const FisherResult r = cfi_photon_number(ModelParams(100, s.theta, s.gamma));
    worst = std::max(worst, rel(*r.cfi, r.qfi));
  }
  report(6, worst <= 1e-5, fmt::format("CFI vs QFI on 50 points, N=100: max rel {:.2e} (tol 1e-5)", worst));
}

void criterion_7() {
  double worst = 0.0;
  for (const Sample& s : samples(20, 7)) {
    const ModelParams p(60, s.theta, s.gamma);
    const double a = qfi(p).qfi;
    worst = std::max({worst, rel(a, qfi_finite_difference(p).qfi), rel(a, qfi_spectral(p).qfi)});
  }
  report(7, worst <= 1e-5,
         fmt::format("three-way QFI on 20 points, N=60: max rel {:.2e} (tol 1e-5)", worst));
}

void criterion_8() {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> coef(-3.0, 3.0);
  int tested = 0, mismatches = 0;
  while (tested < 1000) {
    const double v = coef(rng), w = coef(rng), t = coef(rng);
    if (root_distance(v, w, t) < 0.05) continue;
    ++tested;
    Winding b = Winding::critical();
    try {
      b = winding_integral(v, w, t, 256);
    } catch (const NumericError&) {
    }
    if (!(winding_roots(v, w, t) == b)) ++mismatches;
  }
  const bool canon = winding_roots(1, 0.5, 0) == Winding::of(0) &&
                     winding_roots(1, 2, 0) == Winding::of(-1) &&
                     winding_roots(1, 0, 2) == Winding::of(-2) && winding_roots(1, 2, 1).is_critical();
  report(8, mismatches == 0 && canon,
         fmt::format("{} mismatches on {} non-critical triples; canonical triples {}", mismatches,
                     tested, canon ? "ok" : "wrong"));
}

void criterion_9() {
  const CriticalAngle c = theta_critical();
  const double gj = gamma_junction(c.theta_c);
  const double gt = gamma_tangent(c.theta_c).gamma_t.value_or(std::nan(""));
  const double target = 9.0 / std::sqrt(33.0);
  const bool ok = std::fabs(c.theta_c_over_pi - 0.4443) <= 1e-4 &&
                  std::fabs(c.tan2_theta_c - 32.0) <= 32e-12 && std::fabs(c.x_t - 4.0) <= 1e-12 &&
                  c.residual <= 1e-12 && std::fabs(gj - gt) <= 1e-10 &&
                  std::fabs(gj - target) <= 1e-10;
  report(9, ok,
         fmt::format("theta_c/pi = {:.6f}, tan^2 = {:.15g}, x_t = {:.15g}, residual {:.1e}, "
                     "gamma_J = {:.12f}, gamma_t = {:.12f}, 9/sqrt(33) = {:.12f}",
                     c.theta_c_over_pi, c.tan2_theta_c, c.x_t, c.residual, gj, gt, target));
}

void criterion_10() {
  double worst = 0.0;
  for (long n : {60L, 500L}) {
    for (const Sample& s : samples(20, 10)) {
      const ModelParams p(n, s.theta, s.gamma);
      const ModelParams q(n, s.theta + pi, -s.gamma);
      const ModelParams r(n, -s.theta, s.gamma);
      const double f = qfi(p).qfi, g = gap(p);
      worst = std::max({worst, rel(f, qfi(q).qfi), rel(f, qfi(r).qfi), rel(g, gap(q)),
                        rel(g, gap(r))});
    }
  }
  report(10, worst <= 1e-8,
         fmt::format("symmetries on 40 random points: max rel {:.2e} (tol 1e-8)", worst));
}

}  // namespace

int main() {
  try {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
  } catch (const std::exception& e) {
    fmt::print("acceptance run aborted: {}\n", e.what());
    return 2;
  }
  fmt::print("{} criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
