#include "fslsense/hardware_map.hpp"

#include <cmath>
#include <cstdlib>

#include "fslsense/errors.hpp"

namespace fslsense {

ResonanceCheck check_resonance(const CircuitParams& c, double tol) {
  ResonanceCheck r{};
  r.residual_a = c.omega_a + c.drive_freq - c.omega_z;
  r.residual_b = c.omega_b + 2.0 * c.drive_freq - c.omega_z;
  r.residual_cross = 2.0 * c.omega_a - c.omega_b - c.omega_z;
  r.tolerance = tol * std::fabs(c.omega_z);
  r.pass = std::fabs(r.residual_a) <= r.tolerance && std::fabs(r.residual_b) <= r.tolerance &&
           std::fabs(r.residual_cross) <= r.tolerance;
  return r;
}

double bessel_j(int order, double x) {
  // J_{-n} = (-1)^n J_n and J_n(-x) = (-1)^n J_n(x).
  const int n = std::abs(order);
  double sign = (order < 0 && n % 2 == 1) ? -1.0 : 1.0;
  if (x < 0.0 && n % 2 == 1) sign = -sign;
  return sign * std::cyl_bessel_j(static_cast<double>(n), std::fabs(x));
}

ModelParams EffectiveCouplings::model_params() const {
  return ModelParams(n_excitations, theta, gamma, g);
}

EffectiveCouplings effective_couplings(const CircuitParams& c, long n_excitations,
                                       double resonance_tol) {
  if (c.phase != 0.0)
    throw UnsupportedConfiguration("only drive phase 0 is supported");
  if (n_excitations < 1) throw DomainError("n_excitations must be >= 1");
  const double eta_a = c.eta_a();
  const double eta_b = c.eta_b();
  const double x = c.drive_index();
  if (!std::isfinite(eta_a) || !std::isfinite(eta_b) || !std::isfinite(x))
    throw DomainError("eta_a, eta_b and the drive index must be finite");
  const ResonanceCheck res = check_resonance(c, resonance_tol);
  if (!res.pass) throw DomainError("resonance conditions not satisfied");

  EffectiveCouplings out{};
  const double e = std::exp(-0.5 * (eta_a * eta_a + eta_b * eta_b));
  out.alpha0 = -0.5 * c.omega_x * e * bessel_j(-1, x) * eta_a;
  out.beta0 = -0.5 * c.omega_x * e * bessel_j(-2, x) * eta_b;
  out.gamma_bar = 0.25 * c.omega_x * e * bessel_j(0, x) * eta_a * eta_a * eta_b;
  out.g = std::hypot(out.alpha0, out.beta0);
  out.theta = std::atan2(out.alpha0, out.beta0);
  out.n_excitations = n_excitations;
  out.gamma = static_cast<double>(n_excitations) * out.gamma_bar;
  if (std::max(std::fabs(eta_a), std::fabs(eta_b)) > kEtaWarning)
    out.warnings.push_back("max(|eta_a|, |eta_b|) exceeds " + std::to_string(kEtaWarning) +
                           "; lowest-order sideband truncation may be inaccurate");
  return out;
}

}  // namespace fslsense
