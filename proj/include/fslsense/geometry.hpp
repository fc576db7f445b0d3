#pragma once

// Closed-form large-N geometry of the continuum curve
//   y(x) = (gamma / cos theta) x^2 / (x^2 + tan^2 theta)
// against the W=-1 / W=-2 boundary y = x - 1 (x > 2) and the multi-critical
// point (2, 1). All functions take theta in radians with cos(theta) > 0.

#include <optional>
#include <string_view>
#include <vector>

namespace fslsense {

/// Real roots of a x^3 + b x^2 + c x + d, ascending, each Newton-polished.
/// Repeated roots are reported with multiplicity. Requires a != 0.
std::vector<double> solve_cubic(double a, double b, double c, double d);

/// gamma_J = (1 + 3 cos^2 theta) / (4 cos theta): the curve passes (2, 1).
double gamma_junction(double theta);

enum class WindowRegime { Favorable, Unfavorable };

std::string_view to_string(WindowRegime regime);

struct BoundaryGeometry {
  double theta;
  double gamma_j;
  /// Empty when tan^2 theta < 27 (no tangency with y = x - 1 for x > 2).
  std::optional<double> gamma_t;
  std::vector<double> x_t_roots;  // roots of x^3 - T x + 2T = 0 with x > 2
  std::optional<double> x_t_selected;
  WindowRegime regime;  // Favorable iff gamma_J <= gamma_t or no tangency
};

/// Roots x > 2 of x^3 - T x + 2 T = 0 (equivalently T = x^3 / (x - 2)),
/// ascending; empty for T < 27. A double root at T = 27 is reported once.
std::vector<double> tangency_roots(double tan2_theta);

/// Tangency of the continuum curve with y = x - 1: tan^2 theta = x^3/(x-2),
/// gamma_t = 2 cos theta (x-1)^2/(x-2), minimized over the admissible roots.
BoundaryGeometry gamma_tangent(double theta);

struct CriticalAngle {
  double theta_c;
  double theta_c_over_pi;
  double x_t;
  double tan2_theta_c;
  double gamma_c;        // gamma_J(theta_c) = gamma_t(theta_c)
  double residual;       // |x^3 - 8x^2 + 20x - 16| at x_t
};

/// Angle where gamma_t = gamma_J: 8(x-1)^2 = x^3 + 4x - 8 with the simple root
/// x_t = 4, giving theta_c = arctan(4 sqrt 2).
CriticalAngle theta_critical();

}  // namespace fslsense
