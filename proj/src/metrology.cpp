#include "fslsense/metrology.hpp"

#include <cmath>
#include <vector>

#include "fslsense/errors.hpp"
#include "fslsense/kernels.hpp"
#include "fslsense/spectrum.hpp"
#include "fslsense/zero_mode.hpp"

namespace fslsense {

std::string_view to_string(QfiMethod method) {
  switch (method) {
    case QfiMethod::DerivativeRecursion: return "derivative-recursion";
    case QfiMethod::FiniteDifference: return "finite-difference";
    case QfiMethod::Spectral: return "spectral";
  }
  return "unknown";
}

FisherResult qfi(const ModelParams& params) {
  const ZeroMode mode = solve_zero_mode_dtheta(params);
  return {4.0 * kernels::sum_squares(mode.dtheta), QfiMethod::DerivativeRecursion,
          std::nullopt, params};
}

namespace {

// Zero mode at theta + delta with its sign aligned to the reference.
std::vector<double> shifted_mode(const ModelParams& params, double delta,
                                 const std::vector<double>& reference) {
  std::vector<double> u =
      solve_zero_mode(params.with_theta(params.theta() + delta)).amplitudes;
  if (kernels::dot(u, reference) < 0.0) kernels::scale(-1.0, u);
  return u;
}

}  // namespace

FisherResult qfi_finite_difference(const ModelParams& params, double h) {
  if (!(h > 0.0)) throw DomainError("finite-difference step must be positive");
  const std::vector<double> u = solve_zero_mode(params).amplitudes;
  const std::vector<double> up = shifted_mode(params, h, u);
  std::vector<double> du = shifted_mode(params, -h, u);
  // du <- (up - um) / 2h
  kernels::scale(-1.0, du);
  kernels::axpy(1.0, up, du);
  kernels::scale(0.5 / h, du);
  const double overlap = kernels::dot(u, du);
  const double f = 4.0 * (kernels::sum_squares(du) - overlap * overlap);
  return {f, QfiMethod::FiniteDifference, std::nullopt, params};
}

FisherResult qfi_spectral(const ModelParams& params) {
  const FullSpectrum full = full_spectrum_oracle(params);
  const Eigen::MatrixXd dh = coupling_matrix_dtheta(params).hamiltonian();
  const Eigen::VectorXd psi0 = full.eigenvectors.col(full.zero_index);
  // <E_mu| dH |E_0> for every mu at once.
  const Eigen::VectorXd elements = full.eigenvectors.transpose() * (dh * psi0);
  double f = 0.0;
  for (Eigen::Index mu = 0; mu < full.eigenvalues.size(); ++mu) {
    if (mu == full.zero_index) continue;
    const double e = full.eigenvalues(mu);
    f += elements(mu) * elements(mu) / (e * e);
  }
  return {4.0 * f, QfiMethod::Spectral, std::nullopt, params};
}

FisherResult cfi_photon_number(const ModelParams& params, double h) {
  if (!(h >= 1e-7 && h <= 1e-3))
    throw DomainError("CFI step must lie in [1e-7, 1e-3]");
  const ZeroMode mode = solve_zero_mode_dtheta(params);
  const std::vector<double> p = probabilities(mode);
  // Five-point stencil; the probabilities have large third derivatives near
  // the multicritical point, which a central difference does not tolerate.
  auto p_at = [&](double step) {
    return probabilities(solve_zero_mode(params.with_theta(params.theta() + step)));
  };
  std::vector<double> dp = p_at(-2.0 * h);
  kernels::axpy(-8.0, p_at(-h), dp);
  kernels::axpy(8.0, p_at(h), dp);
  kernels::axpy(-1.0, p_at(2.0 * h), dp);
  kernels::scale(1.0 / (12.0 * h), dp);

  const double cfi = kernels::active().fisher_sum(p.data(), dp.data(), mode.dtheta.data(),
                                                  kCfiProbabilityFloor, p.size());
  return {4.0 * kernels::sum_squares(mode.dtheta), QfiMethod::DerivativeRecursion, cfi,
          params};
}

LinearLimit linear_limit_closed_forms(const ModelParams& params) {
  if (params.gamma() != 0.0)
    throw DomainError("linear-limit closed forms require gamma = 0");
  const double N = static_cast<double>(params.n());
  const double s2 = params.sin_theta() * params.sin_theta();
  const double c2 = params.cos_theta() * params.cos_theta();
  return {4.0 * N, N * s2, N * s2 * c2};
}

double dtheta_hamiltonian_norm(const ModelParams& params) {
  // The chiral block form has norm equal to the largest singular value of
  // its off-diagonal block.
  return singular_values(coupling_matrix_dtheta(params)).front();
}

double qfi_benchmark_bound(const ModelParams& params) {
  const double norm = dtheta_hamiltonian_norm(params);
  const double g = gap(params);
  return 4.0 * norm * norm / (g * g);
}

}  // namespace fslsense
