#pragma once

// Finite-size scaling F ~ N^c1, gap ~ N^c2 over a grid of excitation numbers,
// and the sensitivity/gap-cost trade-off built from gamma sweeps.

#include <optional>
#include <string_view>
#include <vector>

#include "fslsense/model.hpp"

namespace fslsense {

enum class Regime { PowerLaw, Exponential, NumericFloor };
enum class FitModel { PowerLaw, Exponential, Auto };

std::string_view to_string(Regime regime);

struct ScalingPoint {
  long n;
  double y;
};

struct ScalingFit {
  double exponent;   // slope: d log y / d log N (power law) or d log y / dN
  double intercept;
  double r_squared;  // of the selected model
  Regime regime;
  std::vector<long> n_grid;
  std::vector<double> residuals;  // log-space residuals of the selected model
  double rss_power;
  double rss_exponential;
};

/// Smallest positive value treated as resolved. The gap route has high
/// relative accuracy, so only values that underflow to the subnormal range
/// are classified as numeric floor.
double fit_numeric_floor();

/// Least squares of log y against log N (power law) and against N
/// (exponential). Auto selects exponential when its residual sum is below half
/// the power law's and y falls by more than 1e6 across the grid.
/// Requires >= 4 points, y > 0, strictly increasing N.
ScalingFit fit_exponent(const std::vector<ScalingPoint>& points, FitModel model = FitModel::Auto);

/// Same fit from natural-log values, for series that leave the double range.
/// Never reports NumericFloor.
ScalingFit fit_exponent_log(const std::vector<long>& n, const std::vector<double>& log_y,
                            FitModel model = FitModel::Auto);

/// `points` values logarithmically spaced over [n_min, n_max], rounded to
/// integers, duplicates removed.
std::vector<long> log_grid(long n_min, long n_max, int points);

/// Default grid: 8 log-spaced values in [100, 2000].
std::vector<long> default_n_grid();

struct SweepRow {
  long n;
  double qfi;
  double gap;
  double log_gap;        // natural log, finite even when gap underflows
  bool gap_below_floor;  // below the double-precision floor, refined in MPFR
};

struct TradeoffPoint {
  double theta;
  double gamma;
  double c1;
  std::optional<double> c2;  // empty in the exponential / numeric-floor regime
  Regime gap_regime;
  ScalingFit qfi_fit;
  ScalingFit gap_fit;
  std::vector<SweepRow> rows;
};

/// Runs qfi and gap over n_grid and fits both exponents. theta in radians.
TradeoffPoint scan_c1_c2(double theta, double gamma, const std::vector<long>& n_grid,
                         int jobs = 1);

struct GammaSweep {
  double theta;
  std::vector<TradeoffPoint> points;  // in gamma_grid order
  std::optional<double> exponential_onset;  // first gamma with non-power-law gap
};

GammaSweep gamma_sweep(double theta, const std::vector<double>& gamma_grid,
                       const std::vector<long>& n_grid, int jobs = 1);

/// Pool-adjacent-violators fit: the least-squares nondecreasing (or
/// nonincreasing) sequence.
std::vector<double> isotonic(const std::vector<double>& values, bool increasing);

struct FrontierEntry {
  double target;
  std::optional<double> value;  // empty when the target is out of range
  std::optional<double> gamma;
  double benchmark;  // homogeneous local-encoding line c2 = -c1/2
};

struct Frontier {
  double theta;
  std::vector<FrontierEntry> c2_for_c1;  // (a): required c2 per target c1
  std::vector<FrontierEntry> c1_for_c2;  // (b): achievable c1 per target c2
};

/// Builds both frontier tables from the power-law part of a gamma sweep.
/// DomainError when |theta| > 0.44 pi.
Frontier tradeoff_frontier(const GammaSweep& sweep, const std::vector<double>& c1_targets,
                           const std::vector<double>& c2_targets);

}  // namespace fslsense
