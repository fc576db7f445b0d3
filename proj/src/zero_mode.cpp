#include "fslsense/zero_mode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

#include "fslsense/errors.hpp"
#include "fslsense/kernels.hpp"

namespace fslsense {
namespace {

constexpr long kScaleStep = 512;
const double kRescaleThreshold = std::ldexp(1.0, kScaleStep);
constexpr double kPivotTolerance = 64.0 * std::numeric_limits<double>::epsilon();

ZeroMode solve(const ModelParams& params, bool with_derivative) {
  if (std::fabs(params.cos_theta()) <= kPivotTolerance)
    throw DomainError("recursion pivot vanishes: cos(theta) = 0");

  const auto N = static_cast<std::size_t>(params.n());
  const CouplingMatrix a = coupling_matrix(params);
  const CouplingMatrix da = coupling_matrix_dtheta(params);
  const auto v = a.v_band(), w = a.w_band(), t = a.t_band();
  const auto dv = da.v_band(), dw = da.w_band();

  // Entry n is stored as u[n] * 2^(kScaleStep * level[n]). The two most
  // recent entries are always held at the current level, so the recursion
  // runs on O(1) numbers; rescaling by powers of two is exact.
  std::vector<double> u(N + 1, 0.0);
  std::vector<double> du(with_derivative ? N + 1 : 0, 0.0);
  std::vector<long> level(N + 1, 0);
  long current = 0;
  u[0] = 1.0;

  double u1 = 1.0, u2 = 0.0, d1 = 0.0, d2 = 0.0;  // u_{n-1}, u_{n-2}, ...
  for (std::size_t n = 1; n <= N; ++n) {
    const std::size_t r = n - 1;
    const double un = -(w[r] * u1 + t[r] * u2) / v[r];
    double dn = 0.0;
    if (with_derivative) dn = -(dv[r] * un + w[r] * d1 + dw[r] * u1 + t[r] * d2) / v[r];
    if (!std::isfinite(un) || !std::isfinite(dn))
      throw NumericError("non-finite zero-mode amplitude at n = " + std::to_string(n));

    u2 = u1, u1 = un, d2 = d1, d1 = dn;
    const double mag = std::max({std::fabs(u1), std::fabs(u2), std::fabs(d1), std::fabs(d2)});
    if (mag > kRescaleThreshold) {
      u1 = std::ldexp(u1, -kScaleStep), u2 = std::ldexp(u2, -kScaleStep);
      d1 = std::ldexp(d1, -kScaleStep), d2 = std::ldexp(d2, -kScaleStep);
      ++current;
    } else if (mag > 0.0 && mag < 1.0 / kRescaleThreshold) {
      u1 = std::ldexp(u1, kScaleStep), u2 = std::ldexp(u2, kScaleStep);
      d1 = std::ldexp(d1, kScaleStep), d2 = std::ldexp(d2, kScaleStep);
      --current;
    }
    u[n] = u1;
    if (with_derivative) du[n] = d1;
    level[n] = current;
  }

  // Bring everything to the scale of the largest entry.
  long top = std::numeric_limits<long>::min();
  for (std::size_t n = 0; n <= N; ++n)
    if (u[n] != 0.0) top = std::max(top, level[n]);
  for (std::size_t n = 0; n <= N; ++n) {
    const long shift = (level[n] - top) * kScaleStep;
    const int e = static_cast<int>(std::max(shift, -4 * kScaleStep));
    u[n] = std::ldexp(u[n], e);
    if (with_derivative) du[n] = std::ldexp(du[n], e);
  }
  const double peak = kernels::max_abs(u);
  kernels::scale(1.0 / peak, u);
  if (with_derivative) kernels::scale(1.0 / peak, du);

  const double norm = std::sqrt(kernels::sum_squares(u));
  double inv = 1.0 / norm;
  const auto argmax = static_cast<std::size_t>(
      std::max_element(u.begin(), u.end(),
                       [](double x, double y) { return std::fabs(x) < std::fabs(y); }) -
      u.begin());
  if (u[argmax] < 0.0) inv = -inv;
  kernels::scale(inv, u);
  if (with_derivative) {
    kernels::scale(inv, du);
    // d(u/|u|) = du/|u| - u (u.du)/|u|^3, i.e. remove the component along u.
    // Applied twice to clean up rounding left by the first pass.
    kernels::axpy(-kernels::dot(u, du), u, du);
    kernels::axpy(-kernels::dot(u, du), u, du);
  }
  for (double x : u)
    if (!std::isfinite(x)) throw NumericError("non-finite zero mode after normalization");
  for (double x : du)
    if (!std::isfinite(x)) throw NumericError("non-finite zero-mode derivative");

  return ZeroMode{std::move(u), std::move(du), params};
}

}  // namespace

ZeroMode solve_zero_mode(const ModelParams& params) { return solve(params, false); }

ZeroMode solve_zero_mode_dtheta(const ModelParams& params) { return solve(params, true); }

std::vector<double> probabilities(const ZeroMode& mode) {
  std::vector<double> p(mode.amplitudes.size());
  std::transform(mode.amplitudes.begin(), mode.amplitudes.end(), p.begin(),
                 [](double x) { return x * x; });
  return p;
}

double recursion_residual(const ZeroMode& mode) {
  const CouplingMatrix a = coupling_matrix(mode.params);
  const std::vector<double> r = a.apply(mode.amplitudes);
  return kernels::max_abs(r) / kernels::max_abs(mode.amplitudes);
}

}  // namespace fslsense
