#include "fslsense/topology.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "fslsense/errors.hpp"
#include "fslsense/kernels.hpp"

namespace fslsense {

std::string Winding::label() const {
  return is_critical() ? "critical" : std::to_string(*value_);
}

namespace {

bool near_circle(double modulus) { return std::fabs(modulus - 1.0) < kBoundaryTolerance; }

}  // namespace

Winding winding_roots(double v, double w, double t) {
  if (v == 0.0 && w == 0.0 && t == 0.0)
    throw DomainError("winding number undefined for v = w = t = 0");

  if (t == 0.0) {
    if (w == 0.0) return Winding::of(0);
    const double z = std::fabs(v / w);
    if (near_circle(z)) return Winding::critical();
    return Winding::of(z < 1.0 ? -1 : 0);
  }

  const double disc = w * w - 4.0 * t * v;
  if (disc < 0.0) {
    // Complex-conjugate pair with |z|^2 = v / t.
    const double z = std::sqrt(std::fabs(v / t));
    if (near_circle(z)) return Winding::critical();
    return Winding::of(z < 1.0 ? -2 : 0);
  }

  // Real roots, computed without cancellation.
  const double q = -0.5 * (w + std::copysign(std::sqrt(disc), w));
  std::array<double, 2> roots{};
  if (q == 0.0) {
    roots = {0.0, 0.0};
  } else {
    roots = {std::fabs(q / t), std::fabs(v / q)};
  }
  int inside = 0;
  for (double z : roots) {
    if (near_circle(z)) return Winding::critical();
    if (z < 1.0) ++inside;
  }
  return Winding::of(-inside);
}

namespace {

struct KGrid {
  std::vector<double> cos1, sin1, cos2, sin2;
};

// k_j = -pi + 2 pi j / K for j = 0..K; the last sample closes the loop.
const KGrid& k_grid(int k_samples) {
  thread_local std::map<int, KGrid> cache;
  auto it = cache.find(k_samples);
  if (it != cache.end()) return it->second;
  KGrid g;
  const auto n = static_cast<std::size_t>(k_samples) + 1;
  g.cos1.resize(n), g.sin1.resize(n), g.cos2.resize(n), g.sin2.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double k = -std::numbers::pi + 2.0 * std::numbers::pi * static_cast<double>(j) /
                                             static_cast<double>(k_samples);
    g.cos1[j] = std::cos(k), g.sin1[j] = std::sin(k);
    g.cos2[j] = std::cos(2.0 * k), g.sin2[j] = std::sin(2.0 * k);
  }
  return cache.emplace(k_samples, std::move(g)).first->second;
}

}  // namespace

Winding winding_integral(double v, double w, double t, int k_samples) {
  if (v == 0.0 && w == 0.0 && t == 0.0)
    throw DomainError("winding number undefined for v = w = t = 0");
  if (k_samples < 64) throw DomainError("winding integral needs at least 64 k samples");

  const KGrid& grid = k_grid(k_samples);
  const std::size_t n = grid.cos1.size();
  std::vector<double> re(n), im(n), dots(n - 1), crosses(n - 1);
  const auto& kt = kernels::active();
  const double min_mod2 = kt.bloch_eval(v, w, t, grid.cos1.data(), grid.sin1.data(),
                                        grid.cos2.data(), grid.sin2.data(), re.data(),
                                        im.data(), n);
  const double scale = std::fabs(v) + std::fabs(w) + std::fabs(t);
  if (std::sqrt(min_mod2) < kBoundaryTolerance * scale) return Winding::critical();

  kt.phase_steps(re.data(), im.data(), dots.data(), crosses.data(), n);
  double phase = 0.0;
  for (std::size_t j = 0; j + 1 < n; ++j) phase += std::atan2(crosses[j], dots[j]);
  const double turns = phase / (2.0 * std::numbers::pi);
  const double snapped = std::round(turns);
  if (std::fabs(turns - snapped) > 0.1)
    throw NumericError("winding integral under-sampled: " + std::to_string(turns) +
                       " turns");
  return Winding::of(static_cast<int>(snapped));
}

std::vector<Crossing> find_crossings(const std::vector<PhasePoint>& points) {
  std::vector<Crossing> out;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    const Winding& a = points[i].winding;
    const Winding& b = points[i + 1].winding;
    if (a != b) out.push_back({i, a.label() + "|" + b.label()});
  }
  return out;
}

CellCurve cell_curve(const ModelParams& params) {
  if (params.cos_theta() == 0.0 ||
      std::fabs(params.cos_theta()) <= 64.0 * std::numeric_limits<double>::epsilon())
    throw DomainError("degenerate ratios: v_n = 0 at theta = +/- pi/2");
  CellCurve curve;
  curve.points.reserve(static_cast<std::size_t>(params.n()));
  for (long n = 1; n <= params.n(); ++n) {
    const HoppingTriple h = hoppings(params, n);
    curve.points.push_back({h.w / h.v, h.t / h.v, winding_roots(h.v, h.w, h.t)});
  }
  curve.crossings = find_crossings(curve.points);
  return curve;
}

CellCurve continuum_curve(double theta, double gamma, int s_samples) {
  const double c = std::cos(theta);
  if (std::fabs(c) <= 64.0 * std::numeric_limits<double>::epsilon())
    throw DomainError("degenerate ratios: cos(theta) = 0");
  if (s_samples < 1) throw DomainError("continuum curve needs at least one sample");
  const double tan_theta = std::tan(theta);
  CellCurve curve;
  for (int j = 1; j <= s_samples; ++j) {
    const double s = static_cast<double>(j) / static_cast<double>(s_samples + 1);
    const double x = tan_theta * std::sqrt((1.0 - s) / s);
    const double y = gamma / c * (1.0 - s);
    curve.points.push_back({x, y, winding_roots(1.0, x, y)});
    curve.s.push_back(s);
  }
  curve.crossings = find_crossings(curve.points);
  return curve;
}

double continuum_y_of_x(double theta, double gamma, double x) {
  const double c = std::cos(theta);
  if (std::fabs(c) <= 64.0 * std::numeric_limits<double>::epsilon())
    throw DomainError("degenerate ratios: cos(theta) = 0");
  const double tan2 = std::tan(theta) * std::tan(theta);
  return gamma / c * x * x / (x * x + tan2);
}

namespace {

std::string side_labels(double slope, double intercept, double x_probe) {
  const double y = slope * x_probe + intercept;
  const double d = 1e-3 * (1.0 + std::fabs(y));
  const Winding below = winding_roots(1.0, x_probe, y - d);
  const Winding above = winding_roots(1.0, x_probe, y + d);
  return "W=" + below.label() + " below | W=" + above.label() + " above";
}

PhaseBoundary make_line(std::string id, std::string equation, double slope,
                        double intercept, double x_min, double x_max, double x_probe) {
  return {std::move(id), std::move(equation), slope, intercept, x_min, x_max,
          side_labels(slope, intercept, x_probe)};
}

}  // namespace

PhaseBoundaries phase_boundaries() {
  constexpr double inf = std::numeric_limits<double>::infinity();
  PhaseBoundaries b;
  // Root z = -1: 1 - x + y = 0.
  b.lines.push_back(make_line("z=-1,x>2", "y = x - 1", 1.0, -1.0, 2.0, inf, 3.0));
  b.lines.push_back(make_line("z=-1,0<x<2", "y = x - 1", 1.0, -1.0, 0.0, 2.0, 1.0));
  b.lines.push_back(make_line("z=-1,x<0", "y = x - 1", 1.0, -1.0, -inf, 0.0, -1.0));
  // Root z = +1: 1 + x + y = 0.
  b.lines.push_back(make_line("z=+1,x<-2", "y = -x - 1", -1.0, -1.0, -inf, -2.0, -3.0));
  b.lines.push_back(make_line("z=+1,-2<x<0", "y = -x - 1", -1.0, -1.0, -2.0, 0.0, -1.0));
  b.lines.push_back(make_line("z=+1,x>0", "y = -x - 1", -1.0, -1.0, 0.0, inf, 1.0));
  // Complex pair on the circle: y = 1 with x^2 < 4y.
  b.lines.push_back(make_line("|z|=1 pair", "y = 1", 0.0, 1.0, -2.0, 2.0, 0.5));
  b.multicritical = {{2.0, 1.0}, {-2.0, 1.0}};
  return b;
}

double distance_to_w2_boundary(const CellCurve& curve) {
  double best = std::numeric_limits<double>::infinity();
  for (const PhasePoint& p : curve.points)
    if (p.x > 2.0) best = std::min(best, std::fabs(p.y - p.x + 1.0) / std::numbers::sqrt2);
  return best;
}

std::vector<RasterCell> phase_diagram_raster(double x_min, double x_max, int x_points,
                                             double y_min, double y_max, int y_points) {
  if (x_points < 2 || y_points < 2) throw DomainError("raster needs at least 2x2 points");
  if (!(x_max > x_min) || !(y_max > y_min)) throw DomainError("empty raster range");
  std::vector<RasterCell> cells;
  cells.reserve(static_cast<std::size_t>(x_points) * static_cast<std::size_t>(y_points));
  for (int iy = 0; iy < y_points; ++iy) {
    const double y = y_min + (y_max - y_min) * iy / (y_points - 1);
    for (int ix = 0; ix < x_points; ++ix) {
      const double x = x_min + (x_max - x_min) * ix / (x_points - 1);
      cells.push_back({x, y, winding_roots(1.0, x, y)});
    }
  }
  return cells;
}

}  // namespace fslsense
