#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace fslsense::test {

inline constexpr double pi = std::numbers::pi;

inline double rel(double a, double b) {
  const double s = std::max(std::fabs(a), std::fabs(b));
  return s == 0.0 ? 0.0 : std::fabs(a - b) / s;
}

inline double binomial_pmf(long n, long k, double p) {
  if (p == 0.0) return k == 0 ? 1.0 : 0.0;
  if (p == 1.0) return k == n ? 1.0 : 0.0;
  const double lg = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
  return std::exp(lg + k * std::log(p) + (n - k) * std::log1p(-p));
}

struct ThetaGamma {
  double theta;  // radians
  double gamma;
};

/// Random points with |theta| <= 0.44 pi and gamma in [0, 1.2].
inline std::vector<ThetaGamma> random_points(int count, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> th(-0.44, 0.44), ga(0.0, 1.2);
  std::vector<ThetaGamma> out;
  for (int i = 0; i < count; ++i) out.push_back({th(rng) * pi, ga(rng)});
  return out;
}

}  // namespace fslsense::test
