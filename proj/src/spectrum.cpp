#include "fslsense/spectrum.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "fslsense/errors.hpp"

namespace fslsense {

std::vector<double> singular_values(const CouplingMatrix& a) {
  const auto m = static_cast<lapack_int>(a.rows());
  const auto n = static_cast<lapack_int>(a.cols());
  constexpr lapack_int kl = 1, ku = 1, ldab = kl + ku + 1;
  // Column-major band storage: ab[ku + i - j + j * ldab] = A(i, j).
  std::vector<double> ab(static_cast<std::size_t>(ldab * n), 0.0);
  const auto v = a.v_band(), w = a.w_band(), t = a.t_band();
  for (lapack_int i = 0; i < m; ++i) {
    const auto r = static_cast<std::size_t>(i);
    ab[static_cast<std::size_t>(ku - 1 + (i + 1) * ldab)] = v[r];
    ab[static_cast<std::size_t>(ku + i * ldab)] = w[r];
    if (i > 0) ab[static_cast<std::size_t>(ku + 1 + (i - 1) * ldab)] = t[r];
  }
  const lapack_int k = std::min(m, n);
  std::vector<double> d(static_cast<std::size_t>(k));
  std::vector<double> e(static_cast<std::size_t>(std::max<lapack_int>(k - 1, 1)));
  lapack_int info = LAPACKE_dgbbrd(LAPACK_COL_MAJOR, 'N', m, n, 0, kl, ku, ab.data(), ldab,
                                   d.data(), e.data(), nullptr, 1, nullptr, 1, nullptr, 1);
  if (info != 0)
    throw NumericError("band bidiagonalization failed (info = " + std::to_string(info) + ")");
  info = LAPACKE_dbdsqr(LAPACK_COL_MAJOR, m >= n ? 'U' : 'L', k, 0, 0, 0, d.data(), e.data(),
                        nullptr, 1, nullptr, 1, nullptr, 1);
  if (info != 0)
    throw NumericError("bidiagonal singular value solver failed (info = " +
                       std::to_string(info) + ")");
  for (double x : d)
    if (!std::isfinite(x)) throw NumericError("non-finite singular value");
  return d;
}

SpectrumResult spectrum(const ModelParams& params) {
  if (params.n() > kMaxSvdN)
    throw SizeLimitError("N = " + std::to_string(params.n()) +
                         " exceeds the SVD ceiling " + std::to_string(kMaxSvdN));
  std::vector<double> s = singular_values(coupling_matrix(params));
  const double smallest = s.back();
  const bool floor = !(smallest >= kGapFloorRelative * s.front());
  if (!floor)
    return SpectrumResult{smallest, std::log(smallest), std::move(s), params.n(), params, false,
                          false};
  const RefinedGap r = smallest_singular_value_refined(coupling_matrix(params));
  s.back() = r.gap;
  return SpectrumResult{r.gap, r.log_gap, std::move(s), params.n(), params, true, true};
}

double gap(const ModelParams& params) { return spectrum(params).gap; }

FullSpectrum full_spectrum_oracle(const ModelParams& params) {
  if (params.n() > kMaxOracleN)
    throw SizeLimitError("N = " + std::to_string(params.n()) +
                         " exceeds the dense eigensolve oracle limit " +
                         std::to_string(kMaxOracleN));
  const Eigen::MatrixXd h = coupling_matrix(params).hamiltonian();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  if (solver.info() != Eigen::Success) throw NumericError("dense eigensolve failed");

  FullSpectrum out{SpectrumResult{0.0, 0.0, {}, params.n(), params, false, false},
                   solver.eigenvalues(), solver.eigenvectors(), 0};
  out.eigenvalues.cwiseAbs().minCoeff(&out.zero_index);

  // Positive branch of the +/- pairs, descending, gives the singular values.
  const Eigen::Index dim = out.eigenvalues.size();
  const Eigen::Index N = params.n();
  std::vector<double> s;
  s.reserve(static_cast<std::size_t>(N));
  for (Eigen::Index i = dim - 1; i > dim - 1 - N; --i) s.push_back(out.eigenvalues(i));
  out.summary.gap = s.back();
  out.summary.log_gap = std::log(s.back());
  out.summary.below_numeric_floor = s.back() < kGapFloorRelative * s.front();
  out.summary.singular_values = std::move(s);
  return out;
}

}  // namespace fslsense
