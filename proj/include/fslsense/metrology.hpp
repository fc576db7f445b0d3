#pragma once

#include <optional>
#include <string_view>

#include "fslsense/model.hpp"

namespace fslsense {

enum class QfiMethod { DerivativeRecursion, FiniteDifference, Spectral };

std::string_view to_string(QfiMethod method);

struct FisherResult {
  double qfi;
  QfiMethod method;
  std::optional<double> cfi;
  ModelParams params;
};

/// Cells whose probability falls below this switch the classical Fisher
/// information to the limit form 4 (du_n)^2.
inline constexpr double kCfiProbabilityFloor = 1e-30;

/// F = 4 sum_n (du_n)^2 from the derivative recursion.
FisherResult qfi(const ModelParams& params);

/// F = 4 [<dpsi|dpsi> - <psi|dpsi>^2] with dpsi from central differences of
/// the normalized zero mode at theta +/- h (signs aligned with psi(theta)).
FisherResult qfi_finite_difference(const ModelParams& params, double h = 1e-5);

/// F = 4 sum_{mu != 0} |<E_mu| dH |E_0>|^2 / E_mu^2 from the dense eigensolve
/// oracle (N <= kMaxOracleN).
FisherResult qfi_spectral(const ModelParams& params);

/// Classical Fisher information of the photon-number distribution of mode b,
/// sum_n (dP_n)^2 / P_n with dP_n by central differences of step h. The
/// returned record carries the derivative-recursion QFI alongside.
/// h must lie in [1e-7, 1e-3].
FisherResult cfi_photon_number(const ModelParams& params, double h = 1e-5);

struct LinearLimit {
  double qfi;
  double mean;
  double variance;
};

/// gamma = 0 closed forms: 4N, N sin^2, N sin^2 cos^2. DomainError otherwise.
LinearLimit linear_limit_closed_forms(const ModelParams& params);

/// Operator norm of the theta-derivative of the Hamiltonian on the sector.
double dtheta_hamiltonian_norm(const ModelParams& params);

/// Local-encoding bound 4 |dH|^2 / gap^2.
double qfi_benchmark_bound(const ModelParams& params);

}  // namespace fslsense
