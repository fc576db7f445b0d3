#include "fslsense/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fslsense/errors.hpp"

namespace fslsense {
namespace {

double eval_cubic(double a, double b, double c, double d, double x) {
  return ((a * x + b) * x + c) * x + d;
}

double polish(double a, double b, double c, double d, double x) {
  double best = x;
  double best_res = std::fabs(eval_cubic(a, b, c, d, x));
  for (int it = 0; it < 60 && best_res > 0.0; ++it) {
    const double f = eval_cubic(a, b, c, d, x);
    const double df = (3.0 * a * x + 2.0 * b) * x + c;
    if (df == 0.0) break;
    x -= f / df;
    const double res = std::fabs(eval_cubic(a, b, c, d, x));
    if (res < best_res) {
      best = x;
      best_res = res;
    } else if (res >= best_res && it > 4) {
      break;
    }
  }
  return best;
}

void require_positive_cos(double theta) {
  if (!(std::cos(theta) > 0.0))
    throw DomainError("geometry requires cos(theta) > 0; map theta by symmetry first");
}

}  // namespace

std::vector<double> solve_cubic(double a, double b, double c, double d) {
  if (a == 0.0) throw DomainError("solve_cubic: leading coefficient is zero");
  const double B = b / a, C = c / a, D = d / a;
  // x = y - B/3 turns the monic cubic into y^3 + p y + q.
  const double shift = B / 3.0;
  const double p = C - B * B / 3.0;
  const double q = 2.0 * B * B * B / 27.0 - B * C / 3.0 + D;
  const double half_q = 0.5 * q;
  const double third_p = p / 3.0;
  const double disc = half_q * half_q + third_p * third_p * third_p;
  const double scale = half_q * half_q + std::fabs(third_p * third_p * third_p);

  std::vector<double> roots;
  if (p == 0.0 && q == 0.0) {
    roots.assign(3, -shift);
  } else if (disc > 1e-14 * scale) {
    // One real root (Cardano, cancellation-free branch).
    const double u = std::cbrt(-half_q - std::copysign(std::sqrt(disc), half_q));
    const double y = u == 0.0 ? 0.0 : u - p / (3.0 * u);
    roots.push_back(y - shift);
  } else {
    // Three real roots, trigonometric form.
    const double r = 2.0 * std::sqrt(-third_p);
    const double arg = std::clamp(3.0 * q / (2.0 * p) * std::sqrt(-3.0 / p), -1.0, 1.0);
    const double phi = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k)
      roots.push_back(r * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0) - shift);
  }
  for (double& x : roots) x = polish(1.0, B, C, D, x);
  std::sort(roots.begin(), roots.end());
  return roots;
}

double gamma_junction(double theta) {
  require_positive_cos(theta);
  const double c = std::cos(theta);
  return (1.0 + 3.0 * c * c) / (4.0 * c);
}

std::string_view to_string(WindowRegime regime) {
  return regime == WindowRegime::Favorable ? "favorable" : "unfavorable";
}

std::vector<double> tangency_roots(double tan2_theta) {
  if (!(tan2_theta >= 27.0)) return {};
  std::vector<double> out;
  for (double x : solve_cubic(1.0, 0.0, -tan2_theta, 2.0 * tan2_theta)) {
    if (!(x > 2.0)) continue;
    if (!out.empty() && std::fabs(x - out.back()) <= 1e-7 * x) continue;
    out.push_back(x);
  }
  return out;
}

BoundaryGeometry gamma_tangent(double theta) {
  require_positive_cos(theta);
  const double c = std::cos(theta);
  const double tan_theta = std::tan(theta);
  BoundaryGeometry g{theta, gamma_junction(theta), std::nullopt,
                     tangency_roots(tan_theta * tan_theta), std::nullopt,
                     WindowRegime::Favorable};
  for (double x : g.x_t_roots) {
    const double gt = 2.0 * c * (x - 1.0) * (x - 1.0) / (x - 2.0);
    // First contact as gamma grows is the smallest tangency threshold.
    if (!g.gamma_t || gt < *g.gamma_t) {
      g.gamma_t = gt;
      g.x_t_selected = x;
    }
  }
  if (g.gamma_t && *g.gamma_t < g.gamma_j) g.regime = WindowRegime::Unfavorable;
  return g;
}

CriticalAngle theta_critical() {
  // 8(x-1)^2 = x^3 + 4x - 8  <=>  x^3 - 8x^2 + 20x - 16 = (x-4)(x-2)^2 = 0.
  const std::vector<double> roots = solve_cubic(1.0, -8.0, 20.0, -16.0);
  // The double root at x = 2 is the degenerate edge x_t > 2 excludes.
  double x_t = -std::numeric_limits<double>::infinity();
  for (double x : roots)
    if (x > 2.0 + 1e-6) x_t = std::max(x_t, x);
  if (!std::isfinite(x_t)) throw NumericError("critical-angle cubic has no root above 2");

  CriticalAngle out{};
  out.x_t = x_t;
  out.tan2_theta_c = x_t * x_t * x_t / (x_t - 2.0);
  out.theta_c = std::atan(std::sqrt(out.tan2_theta_c));
  out.theta_c_over_pi = out.theta_c / std::numbers::pi;
  out.gamma_c = gamma_junction(out.theta_c);
  out.residual = std::fabs(eval_cubic(1.0, -8.0, 20.0, -16.0, x_t));
  return out;
}

}  // namespace fslsense
