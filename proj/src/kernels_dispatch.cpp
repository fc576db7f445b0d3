#include <cstdlib>
#include <string_view>

#include "fslsense/errors.hpp"
#include "kernels_impl.hpp"

namespace fslsense::kernels {

const KernelTable* avx2() {
#if defined(FSLSENSE_HAVE_AVX2)
  static const bool supported =
      __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &detail::avx2_table() : nullptr;
#else
  return nullptr;
#endif
}

namespace {

const KernelTable& select() {
  const char* env = std::getenv("FSLSENSE_SIMD");
  const std::string_view request = env ? env : "";
  if (request == "scalar") return scalar();
  if (const KernelTable* t = avx2()) return *t;
  return scalar();
}

void check_sizes(std::size_t a, std::size_t b) {
  if (a != b) throw DomainError("kernel operands differ in length");
}

}  // namespace

const KernelTable& active() {
  static const KernelTable& table = select();
  return table;
}

double dot(std::span<const double> x, std::span<const double> y) {
  check_sizes(x.size(), y.size());
  return active().dot(x.data(), y.data(), x.size());
}

double sum_squares(std::span<const double> x) {
  return active().sum_squares(x.data(), x.size());
}

double max_abs(std::span<const double> x) {
  return active().max_abs(x.data(), x.size());
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
  check_sizes(x.size(), y.size());
  active().axpy(a, x.data(), y.data(), x.size());
}

void scale(double a, std::span<double> x) {
  active().scale(a, x.data(), x.size());
}

}  // namespace fslsense::kernels
