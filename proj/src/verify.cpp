#include "fslsense/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <fmt/format.h>
#include <numbers>
#include <random>

#include "fslsense/errors.hpp"
#include "fslsense/geometry.hpp"
#include "fslsense/metrology.hpp"
#include "fslsense/model.hpp"
#include "fslsense/parallel.hpp"
#include "fslsense/spectrum.hpp"
#include "fslsense/topology.hpp"
#include "fslsense/zero_mode.hpp"

namespace fslsense {

namespace {

constexpr double pi = std::numbers::pi;

double rel(double a, double b) {
  const double s = std::max(std::fabs(a), std::fabs(b));
  return s == 0.0 ? 0.0 : std::fabs(a - b) / s;
}

CheckResult check(std::string name, double measured, double tol, std::string detail = {}) {
  return {std::move(name), measured <= tol, measured, tol, std::move(detail)};
}

struct Sample {
  double theta;
  double gamma;
};

std::vector<Sample> random_samples(std::mt19937_64& rng, int count) {
  std::uniform_real_distribution<double> th(-0.44, 0.44), ga(0.0, 1.2);
  std::vector<Sample> out;
  for (int i = 0; i < count; ++i) out.push_back({th(rng) * pi, ga(rng)});
  return out;
}

// Root moduli of v + w z + t z^2 through std::complex, independent of the
// cancellation-free path used by winding_roots.
double min_distance_to_circle(double v, double w, double t) {
  if (t == 0.0) return w == 0.0 ? 1.0 : std::fabs(std::fabs(v / w) - 1.0);
  const std::complex<double> d = std::sqrt(std::complex<double>(w * w - 4.0 * t * v, 0.0));
  const std::complex<double> r1 = (-w + d) / (2.0 * t), r2 = (-w - d) / (2.0 * t);
  return std::min(std::fabs(std::abs(r1) - 1.0), std::fabs(std::abs(r2) - 1.0));
}

}  // namespace

std::vector<CheckResult> run_invariant_suite(const VerifyOptions& opt) {
  std::vector<CheckResult> out;
  std::mt19937_64 rng(opt.seed);
  const double agree_tol = opt.tol.value_or(1e-5);
  const double sym_tol = opt.tol.value_or(1e-8);
  const auto samples = random_samples(rng, opt.random_points);

  // Chiral block structure, exact.
  {
    const ModelParams p = ModelParams::from_units_of_pi(opt.n, 0.2, 0.92);
    const Eigen::MatrixXd h = coupling_matrix(p).hamiltonian();
    const Eigen::VectorXd c = chiral_operator_diagonal(opt.n);
    const Eigen::MatrixXd anti = c.asDiagonal() * h + h * c.asDiagonal();
    out.push_back(check("chiral_anticommutation", anti.cwiseAbs().maxCoeff(), 0.0,
                        fmt::format("N={} theta=0.2pi gamma=0.92", opt.n)));
  }

  // +/- pairing and a single zero eigenvalue.
  {
    double worst = 0.0;
    int zeros_ok = 0;
    for (const Sample& s : samples) {
      const FullSpectrum fs = full_spectrum_oracle(ModelParams(opt.n, s.theta, s.gamma));
      const Eigen::Index m = fs.eigenvalues.size();
      const double scale = fs.eigenvalues.cwiseAbs().maxCoeff();
      for (Eigen::Index i = 0; i < m; ++i)
        worst = std::max(worst, std::fabs(fs.eigenvalues[i] + fs.eigenvalues[m - 1 - i]) / scale);
      const auto near_zero = (fs.eigenvalues.array().abs() <= 1e-10).count();
      if (near_zero == 1) ++zeros_ok;
    }
    out.push_back(check("spectrum_pm_pairing", worst, 1e-9,
                        fmt::format("{} random points, N={}", samples.size(), opt.n)));
    out.push_back(check("single_zero_eigenvalue",
                        static_cast<double>(static_cast<int>(samples.size()) - zeros_ok), 0.0,
                        "count of points without exactly one |E| <= 1e-10"));
  }

  // Zero-mode null residual, normalization and orthogonality of the derivative.
  {
    double resid = 0.0, norm = 0.0, ortho = 0.0;
    for (long n : {opt.n, 1000L}) {
      for (const Sample& s : samples) {
        const ZeroMode z = solve_zero_mode_dtheta(ModelParams(n, s.theta, s.gamma));
        resid = std::max(resid, recursion_residual(z));
        double nn = 0.0, ud = 0.0;
        for (std::size_t i = 0; i < z.amplitudes.size(); ++i) {
          nn += z.amplitudes[i] * z.amplitudes[i];
          ud += z.amplitudes[i] * z.dtheta[i];
        }
        norm = std::max(norm, std::fabs(nn - 1.0));
        ortho = std::max(ortho, std::fabs(ud));
      }
    }
    out.push_back(check("zero_mode_null_residual", resid, 1e-10, "max |A u| / max |u|"));
    out.push_back(check("zero_mode_normalization", norm, 1e-12));
    out.push_back(check("zero_mode_derivative_orthogonal", ortho, 1e-10));
  }

  // Linear limit: F = 4N and gap = 1.
  {
    double f_worst = 0.0, g_worst = 0.0;
    for (long n : {10L, 100L, 1000L}) {
      for (double th : {0.1, 0.2, 0.3, 0.4}) {
        const ModelParams p = ModelParams::from_units_of_pi(n, th, 0.0);
        f_worst = std::max(f_worst, rel(qfi(p).qfi, 4.0 * static_cast<double>(n)));
        g_worst = std::max(g_worst, std::fabs(gap(p) - 1.0));
      }
    }
    out.push_back(check("linear_limit_qfi_4N", f_worst, 1e-8, "N in {10,100,1000}"));
    out.push_back(check("linear_limit_gap_1", g_worst, 1e-10, "N in {10,100,1000}"));
  }

  // Classical Fisher information of photon counting saturates the QFI.
  {
    double worst = 0.0;
    for (const Sample& s : samples) {
      const FisherResult r = cfi_photon_number(ModelParams(100, s.theta, s.gamma));
      worst = std::max(worst, rel(*r.cfi, r.qfi));
    }
    out.push_back(check("cfi_equals_qfi", worst, agree_tol, "N=100"));
  }

  // Three QFI routes.
  {
    double worst = 0.0;
    for (const Sample& s : samples) {
      const ModelParams p(60, s.theta, s.gamma);
      const double a = qfi(p).qfi;
      worst = std::max({worst, rel(a, qfi_finite_difference(p).qfi), rel(a, qfi_spectral(p).qfi)});
    }
    out.push_back(check("qfi_three_way_agreement", worst, agree_tol, "N=60"));
  }

  // Winding numbers by roots and by phase integral.
  {
    std::uniform_real_distribution<double> coef(-3.0, 3.0);
    int mismatches = 0, tested = 0;
    while (tested < opt.winding_triples) {
      const double v = coef(rng), w = coef(rng), t = coef(rng);
      if (min_distance_to_circle(v, w, t) < 0.05) continue;
      ++tested;
      const Winding a = winding_roots(v, w, t);
      Winding b = Winding::critical();
      try {
        b = winding_integral(v, w, t, opt.ksamples);
      } catch (const NumericError&) {
      }
      if (!(a == b)) ++mismatches;
    }
    out.push_back(check("winding_roots_vs_integral", mismatches, 0.0,
                        fmt::format("{} non-critical triples", tested)));
    const bool canon = winding_roots(1, 0.5, 0) == Winding::of(0) &&
                       winding_roots(1, 2, 0) == Winding::of(-1) &&
                       winding_roots(1, 0, 2) == Winding::of(-2) &&
                       winding_roots(1, 2, 1).is_critical();
    out.push_back(check("winding_canonical_triples", canon ? 0.0 : 1.0, 0.0,
                        "(1,0.5,0)->0 (1,2,0)->-1 (1,0,2)->-2 (1,2,1)->critical"));
  }

  // Unitary equivalence and mirror symmetry.
  {
    double f_worst = 0.0, g_worst = 0.0;
    for (const Sample& s : samples) {
      const ModelParams p(60, s.theta, s.gamma);
      const ModelParams shifted(60, s.theta + pi, -s.gamma);
      const ModelParams mirrored(60, -s.theta, s.gamma);
      const double f = qfi(p).qfi, gp = gap(p);
      f_worst = std::max({f_worst, rel(f, qfi(shifted).qfi), rel(f, qfi(mirrored).qfi)});
      g_worst = std::max({g_worst, rel(gp, gap(shifted)), rel(gp, gap(mirrored))});
    }
    out.push_back(check("symmetry_qfi", f_worst, sym_tol,
                        "(theta,gamma)->(theta+pi,-gamma) and (-theta,gamma)"));
    out.push_back(check("symmetry_gap", g_worst, sym_tol,
                        "(theta,gamma)->(theta+pi,-gamma) and (-theta,gamma)"));
  }

  // Geometry closed forms.
  {
    const CriticalAngle c = theta_critical();
    out.push_back(check("theta_critical_cubic_residual", c.residual, 1e-12));
    out.push_back(check("theta_critical_x_t", std::fabs(c.x_t - 4.0), 1e-12));
    out.push_back(check("theta_critical_tan2", rel(c.tan2_theta_c, 32.0), 1e-12));
    const BoundaryGeometry bg = gamma_tangent(c.theta_c);
    const double gj = gamma_junction(c.theta_c);
    const double gt = bg.gamma_t.value_or(std::nan(""));
    out.push_back(check("gamma_junction_equals_tangent_at_theta_c",
                        std::max(std::fabs(gj - gt), std::fabs(gj - 9.0 / std::sqrt(33.0))), 1e-10));
    double worst = 0.0;
    for (double th = 0.43; th < 0.4951; th += 0.005) {
      const double tan2 = std::pow(std::tan(th * pi), 2);
      for (double x : tangency_roots(tan2)) worst = std::max(worst, rel(x * x * x / (x - 2.0), tan2));
    }
    out.push_back(check("tangency_root_residuals", worst, 1e-10, "tan^2 = x^3/(x-2)"));
  }

  return out;
}

}  // namespace fslsense
