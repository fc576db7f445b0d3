#pragma once

// Circuit-QED realization: a longitudinally coupled, driven qubit whose
// lowest-order Bessel sidebands produce the linear and three-body couplings
// of the sensing Hamiltonian.

#include <string>
#include <vector>

#include "fslsense/model.hpp"

namespace fslsense {

struct CircuitParams {
  double g_a = 0.0;       // longitudinal coupling to mode a
  double g_b = 0.0;       // longitudinal coupling to mode b
  double omega_a = 0.0;
  double omega_b = 0.0;
  double omega_z = 0.0;   // qubit splitting
  double omega_x = 0.0;   // transverse qubit term
  double drive_amp = 0.0; // Omega
  double drive_freq = 0.0;
  double phase = 0.0;     // only 0 is supported

  double eta_a() const { return 2.0 * g_a / omega_a; }
  double eta_b() const { return 2.0 * g_b / omega_b; }
  /// Drive index x = 2 Omega / omega_drive.
  double drive_index() const { return 2.0 * drive_amp / drive_freq; }
};

/// Above this Lamb-Dicke parameter the lowest-order truncation is flagged.
inline constexpr double kEtaWarning = 0.3;

struct ResonanceCheck {
  bool pass;
  double residual_a;      // omega_a + omega_drive - omega_z
  double residual_b;      // omega_b + 2 omega_drive - omega_z
  double residual_cross;  // 2 omega_a - omega_b - omega_z
  double tolerance;       // absolute, tol * |omega_z|
};

ResonanceCheck check_resonance(const CircuitParams& circuit, double tol = 1e-6);

struct EffectiveCouplings {
  double alpha0;     // coefficient of a^dag sigma^-
  double beta0;      // coefficient of b^dag sigma^-
  double gamma_bar;  // coefficient of a^dag a^dag b sigma^-
  double g;          // sqrt(alpha0^2 + beta0^2)
  double theta;      // atan2(alpha0, beta0), in (-pi, pi]
  long n_excitations;
  double gamma;      // N * gamma_bar
  std::vector<std::string> warnings;

  ModelParams model_params() const;
};

/// Bessel function of the first kind for integer order, any real argument.
double bessel_j(int order, double x);

/// Lowest-order sideband couplings with E = exp(-(eta_a^2 + eta_b^2)/2):
///   alpha0 = -(omega_x/2) E J_{-1}(x) eta_a
///   beta0  = -(omega_x/2) E J_{-2}(x) eta_b
///   gamma_bar = (omega_x/4) E J_0(x) eta_a^2 eta_b
/// Throws UnsupportedConfiguration for phase != 0 and DomainError when the
/// resonance conditions fail.
EffectiveCouplings effective_couplings(const CircuitParams& circuit, long n_excitations,
                                       double resonance_tol = 1e-6);

}  // namespace fslsense
