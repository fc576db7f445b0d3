#pragma once

// Data-parallel inner loops with a scalar reference implementation and
// vectorized variants picked at runtime. Every variant must agree with the
// scalar table up to reassociation of floating-point sums.
//
// Selection: the widest variant supported by the running CPU, unless the
// environment variable FSLSENSE_SIMD is set to "scalar" (or "avx2").

#include <cstddef>
#include <span>
#include <string_view>

namespace fslsense::kernels {

struct BlochTables {
  std::span<const double> cos1;  // cos(k_j)
  std::span<const double> sin1;  // sin(k_j)
  std::span<const double> cos2;  // cos(2 k_j)
  std::span<const double> sin2;  // sin(2 k_j)
};

struct KernelTable {
  std::string_view name;

  double (*dot)(const double* x, const double* y, std::size_t n);
  double (*sum_squares)(const double* x, std::size_t n);
  double (*max_abs)(const double* x, std::size_t n);
  /// y += a * x
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  /// x *= a
  void (*scale)(double a, double* x, std::size_t n);

  /// Three-band product out[r] = v[r] u[r+1] + w[r] u[r] + t[r] u[r-1]
  /// (t[0] is ignored), r = 0..rows-1, u has rows+1 entries.
  void (*band3_apply)(const double* v, const double* w, const double* t,
                      const double* u, double* out, std::size_t rows);

  /// h(k_j) = v + w e^{-i k_j} + t e^{-2 i k_j} sampled on n grid points.
  /// Writes real and imaginary parts; returns min_j |h(k_j)|^2.
  double (*bloch_eval)(double v, double w, double t, const double* cos1,
                       const double* sin1, const double* cos2,
                       const double* sin2, double* re, double* im,
                       std::size_t n);

  /// For consecutive samples z_j = re_j + i im_j computes
  /// dots[j] = Re(z_{j+1} conj z_j), crosses[j] = Im(z_{j+1} conj z_j),
  /// j = 0..n-2.
  void (*phase_steps)(const double* re, const double* im, double* dots,
                      double* crosses, std::size_t n);

  /// sum_j dp_j^2 / p_j over cells with p_j >= floor, plus
  /// 4 du_j^2 over cells with p_j < floor.
  double (*fisher_sum)(const double* p, const double* dp, const double* du,
                       double floor, std::size_t n);
};

const KernelTable& scalar();
/// nullptr when not compiled in or not supported by this CPU.
const KernelTable* avx2();
/// Table used by the library.
const KernelTable& active();

// Convenience wrappers over active().
double dot(std::span<const double> x, std::span<const double> y);
double sum_squares(std::span<const double> x);
double max_abs(std::span<const double> x);
void axpy(double a, std::span<const double> x, std::span<double> y);
void scale(double a, std::span<double> x);

}  // namespace fslsense::kernels
