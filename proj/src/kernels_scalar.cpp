#include "kernels_impl.hpp"

#include <algorithm>
#include <cmath>

namespace fslsense::kernels {
namespace {

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

double sum_squares_scalar(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * x[i];
  return s;
}

double max_abs_scalar(const double* x, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(x[i]));
  return m;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scale_scalar(double a, double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

void band3_apply_scalar(const double* v, const double* w, const double* t,
                        const double* u, double* out, std::size_t rows) {
  for (std::size_t r = 0; r < rows; ++r) {
    double s = v[r] * u[r + 1] + w[r] * u[r];
    if (r > 0) s += t[r] * u[r - 1];
    out[r] = s;
  }
}

double bloch_eval_scalar(double v, double w, double t, const double* cos1,
                         const double* sin1, const double* cos2,
                         const double* sin2, double* re, double* im,
                         std::size_t n) {
  double min_mod2 = INFINITY;
  for (std::size_t j = 0; j < n; ++j) {
    const double a = v + w * cos1[j] + t * cos2[j];
    const double b = -(w * sin1[j] + t * sin2[j]);
    re[j] = a;
    im[j] = b;
    min_mod2 = std::min(min_mod2, a * a + b * b);
  }
  return min_mod2;
}

void phase_steps_scalar(const double* re, const double* im, double* dots,
                        double* crosses, std::size_t n) {
  for (std::size_t j = 0; j + 1 < n; ++j) {
    dots[j] = re[j + 1] * re[j] + im[j + 1] * im[j];
    crosses[j] = im[j + 1] * re[j] - re[j + 1] * im[j];
  }
}

double fisher_sum_scalar(const double* p, const double* dp, const double* du,
                         double floor, std::size_t n) {
  double s = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (p[j] < floor)
      s += 4.0 * du[j] * du[j];
    else
      s += dp[j] * dp[j] / p[j];
  }
  return s;
}

}  // namespace

const KernelTable& scalar() {
  static const KernelTable table{
      "scalar",          dot_scalar,         sum_squares_scalar,
      max_abs_scalar,    axpy_scalar,        scale_scalar,
      band3_apply_scalar, bloch_eval_scalar, phase_steps_scalar,
      fisher_sum_scalar,
  };
  return table;
}

}  // namespace fslsense::kernels
