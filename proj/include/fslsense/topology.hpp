#pragma once

// Winding numbers of the local extended SSH Bloch Hamiltonian
//   h(k) = v + w e^{-ik} + t e^{-2ik}
// and the cell-dependent curve the hopping ratios trace through the
// (x, y) = (w/v, t/v) phase diagram.

#include <optional>
#include <string>
#include <vector>

#include "fslsense/model.hpp"

namespace fslsense {

/// Relative tolerance for a root of v + w z + t z^2 on the unit circle.
inline constexpr double kBoundaryTolerance = 1e-9;

/// Winding number W in {0, -1, -2}, or a critical flag when the polynomial
/// has a root on (or within tolerance of) the unit circle.
class Winding {
 public:
  static Winding critical() { return Winding(); }
  static Winding of(int w) { return Winding(w); }

  bool is_critical() const { return !value_.has_value(); }
  /// Precondition: !is_critical().
  int value() const { return *value_; }
  std::string label() const;

  friend bool operator==(const Winding&, const Winding&) = default;

 private:
  Winding() = default;
  explicit Winding(int w) : value_(w) {}
  std::optional<int> value_;
};

/// Minus the number of roots of v + w z + t z^2 inside |z| < 1.
Winding winding_roots(double v, double w, double t);

/// Unwrapped phase of h(k) over k in (-pi, pi] on k_samples points,
/// divided by 2 pi. Throws NumericError if the accumulated phase is more
/// than 0.1 from an integer (under-sampled near a boundary).
Winding winding_integral(double v, double w, double t, int k_samples = 256);

struct PhasePoint {
  double x;  // w / v
  double y;  // t / v
  Winding winding;
};

struct Crossing {
  std::size_t segment;  // between points[segment] and points[segment + 1]
  std::string boundary; // "<W before>|<W after>", e.g. "0|-1"
};

struct CellCurve {
  std::vector<PhasePoint> points;
  std::vector<Crossing> crossings;
  /// Continuum parameter s per point (continuum curves only).
  std::vector<double> s;
};

/// Ratios (w_n / v_n, t_n / v_n) for n = 1..N with winding labels.
/// DomainError at cos(theta) = 0 where the ratios degenerate.
CellCurve cell_curve(const ModelParams& params);

/// Large-N curve x(s) = tan(theta) sqrt((1-s)/s), y(s) = gamma (1-s)/cos(theta)
/// on the open grid s_j = j / (s_samples + 1), j = 1..s_samples.
CellCurve continuum_curve(double theta, double gamma, int s_samples);

/// Eliminated form y(x) = (gamma / cos theta) x^2 / (x^2 + tan^2 theta).
double continuum_y_of_x(double theta, double gamma, double x);

/// Crossings between consecutive labelled points. Critical points count as
/// their own label.
std::vector<Crossing> find_crossings(const std::vector<PhasePoint>& points);

/// Analytic phase boundaries in the (x, y) plane: the polynomial
/// 1 + x z + y z^2 has a root on the unit circle.
struct PhaseBoundary {
  std::string id;
  std::string equation;
  double slope;      // y = slope * x + intercept
  double intercept;
  double x_min;
  double x_max;
  std::string separates;  // e.g. "W=-1 below | W=-2 above"
};

struct PhaseBoundaries {
  std::vector<PhaseBoundary> lines;
  struct Point {
    double x, y;
  };
  std::vector<Point> multicritical;
};

PhaseBoundaries phase_boundaries();

/// Minimum distance from the curve points to the line y = x - 1 restricted
/// to x > 2, together with the winding-number crossings.
double distance_to_w2_boundary(const CellCurve& curve);

struct RasterCell {
  double x, y;
  Winding winding;
};

/// Winding labels on a uniform grid, row-major in y then x.
std::vector<RasterCell> phase_diagram_raster(double x_min, double x_max, int x_points,
                                             double y_min, double y_max, int y_points);

}  // namespace fslsense
