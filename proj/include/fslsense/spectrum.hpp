#pragma once

#include <Eigen/Dense>

#include <vector>

#include "fslsense/model.hpp"

namespace fslsense {

/// Largest N accepted by the singular-value path.
inline constexpr long kMaxSvdN = 4000;
/// Largest N accepted by the (2N+1)^2 dense eigensolve oracle.
inline constexpr long kMaxOracleN = 200;
/// Gaps below this multiple of the largest singular value are flagged.
inline constexpr double kGapFloorRelative = 1e-12;

/// Nonzero energies are +/- singular values of the coupling block; the one
/// remaining eigenvalue is the exact zero mode.
struct SpectrumResult {
  /// Underflows to 0 when the true gap is below the double range; log_gap
  /// still carries it.
  double gap;
  double log_gap;  // natural log
  std::vector<double> singular_values;  // descending, length N
  long n_excitations;
  ModelParams params;
  /// gap < kGapFloorRelative * largest singular value.
  bool below_numeric_floor;
  /// The gap was recomputed in multiprecision because it fell below the floor.
  bool refined;
};

/// Singular values of a coupling block, descending. The block is tridiagonal
/// in 0-based (row, column) indexing, so it is reduced to bidiagonal form with
/// plane rotations (dgbbrd) and finished with the bidiagonal QR/dqds solver
/// (dbdsqr), O(N^2) work and O(N) memory.
std::vector<double> singular_values(const CouplingMatrix& a);

struct RefinedGap {
  double gap;      // 0 when below the double range
  double log_gap;  // natural log
};

/// Smallest singular value from power iteration on the
/// pseudo-inverse in MPFR arithmetic with precision set from the dynamic range
/// of the zero mode. Resolves gaps far below the double floor.
RefinedGap smallest_singular_value_refined(const CouplingMatrix& a);

SpectrumResult spectrum(const ModelParams& params);

/// Excitation gap, the smallest singular value of the coupling block.
double gap(const ModelParams& params);

struct FullSpectrum {
  SpectrumResult summary;
  Eigen::VectorXd eigenvalues;   // ascending, length 2N+1
  Eigen::MatrixXd eigenvectors;  // columns match eigenvalues
  Eigen::Index zero_index;       // eigenvalue of smallest magnitude
};

/// Brute-force validation path: dense self-adjoint eigensolve of the full
/// chiral Hamiltonian. Independent of the LAPACK singular-value route.
FullSpectrum full_spectrum_oracle(const ModelParams& params);

}  // namespace fslsense
