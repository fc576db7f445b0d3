#pragma once

#include <vector>

#include "fslsense/model.hpp"

namespace fslsense {

/// Exact zero-energy eigenstate, supported on the down sublattice.
/// amplitudes[n] multiplies |down, N-n, n>; the entry of largest magnitude
/// is positive. dtheta is the theta-derivative of the normalized state and is
/// empty unless requested.
struct ZeroMode {
  std::vector<double> amplitudes;
  std::vector<double> dtheta;
  ModelParams params;
};

/// Solves v_n u_n + w_n u_{n-1} + t_n u_{n-2} = 0 (n = 1..N, u_{-1} = 0) from
/// u_0 = 1, rescaling whenever the running maximum exceeds 2^512.
///
/// Throws DomainError when cos(theta) vanishes (the recursion pivot) and
/// NumericError if an intermediate is non-finite.
ZeroMode solve_zero_mode(const ModelParams& params);

/// As solve_zero_mode, plus the derivative from the differentiated recursion
/// v_n u'_n + v'_n u_n + w_n u'_{n-1} + w'_n u_{n-1} + t_n u'_{n-2} = 0,
/// carried at the same scale and projected orthogonal to the state.
ZeroMode solve_zero_mode_dtheta(const ModelParams& params);

/// P_n = u_n^2.
std::vector<double> probabilities(const ZeroMode& mode);

/// Largest |v_n u_n + w_n u_{n-1} + t_n u_{n-2}| relative to max |u|.
double recursion_residual(const ZeroMode& mode);

}  // namespace fslsense
