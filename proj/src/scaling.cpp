#include "fslsense/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fslsense/errors.hpp"
#include "fslsense/metrology.hpp"
#include "fslsense/parallel.hpp"
#include "fslsense/spectrum.hpp"

namespace fslsense {

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::PowerLaw: return "power-law";
    case Regime::Exponential: return "exponential";
    case Regime::NumericFloor: return "numeric-floor";
  }
  return "unknown";
}

double fit_numeric_floor() { return std::numeric_limits<double>::min(); }

namespace {

struct LineFit {
  double slope;
  double intercept;
  double rss;
  double r_squared;
  std::vector<double> residuals;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
  mx /= n, my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LineFit f{};
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (f.intercept + f.slope * x[i]);
    f.residuals.push_back(r);
    f.rss += r * r;
  }
  // A flat series has no variance to explain; call it a perfect fit when the
  // residuals are at rounding level.
  const double flat = 1e-20 * n * (1.0 + my * my);
  if (syy <= flat)
    f.r_squared = f.rss <= flat ? 1.0 : 0.0;
  else
    f.r_squared = std::clamp(1.0 - f.rss / syy, 0.0, 1.0);
  return f;
}

}  // namespace

ScalingFit fit_exponent_log(const std::vector<long>& n, const std::vector<double>& log_y,
                            FitModel model) {
  if (n.size() != log_y.size()) throw DomainError("N and y lengths differ");
  if (n.size() < 4) throw DomainError("scaling fit needs at least 4 points");
  std::vector<double> log_n, n_lin;
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (n[i] < 1) throw DomainError("scaling fit needs N >= 1");
    if (i > 0 && n[i] <= n[i - 1]) throw DomainError("N must be strictly increasing");
    if (!std::isfinite(log_y[i])) throw DomainError("scaling fit needs finite y > 0");
    log_n.push_back(std::log(static_cast<double>(n[i])));
    n_lin.push_back(static_cast<double>(n[i]));
  }
  const LineFit pow = least_squares(log_n, log_y);
  const LineFit exp = least_squares(n_lin, log_y);

  const double log_drop = log_y.back() - log_y.front();
  const bool exponential_wins = exp.rss < 0.5 * pow.rss && log_drop < std::log(1e-6);

  bool use_exp = false;
  switch (model) {
    case FitModel::PowerLaw: break;
    case FitModel::Exponential: use_exp = true; break;
    case FitModel::Auto: use_exp = exponential_wins; break;
  }
  const LineFit& chosen = use_exp ? exp : pow;
  return ScalingFit{chosen.slope, chosen.intercept, chosen.r_squared,
                    use_exp ? Regime::Exponential : Regime::PowerLaw, n, chosen.residuals,
                    pow.rss, exp.rss};
}

ScalingFit fit_exponent(const std::vector<ScalingPoint>& points, FitModel model) {
  std::vector<long> grid;
  std::vector<double> log_y;
  bool below_floor = false;
  for (const ScalingPoint& p : points) {
    if (!(p.y > 0.0) || !std::isfinite(p.y))
      throw DomainError("scaling fit needs finite y > 0");
    if (p.y < fit_numeric_floor()) below_floor = true;
    grid.push_back(p.n);
    log_y.push_back(std::log(p.y));
  }
  ScalingFit fit = fit_exponent_log(grid, log_y, model);
  if (below_floor) fit.regime = Regime::NumericFloor;
  return fit;
}

std::vector<long> log_grid(long n_min, long n_max, int points) {
  if (n_min < 1 || n_max < n_min) throw DomainError("invalid N range");
  if (points < 1) throw DomainError("grid needs at least one point");
  std::vector<long> out;
  if (points == 1) return {n_min};
  const double a = std::log(static_cast<double>(n_min));
  const double b = std::log(static_cast<double>(n_max));
  for (int i = 0; i < points; ++i) {
    const double f = static_cast<double>(i) / (points - 1);
    const long n = std::lround(std::exp(a + f * (b - a)));
    if (out.empty() || n > out.back()) out.push_back(n);
  }
  out.front() = n_min;
  out.back() = n_max;
  return out;
}

std::vector<long> default_n_grid() { return log_grid(100, 2000, 8); }

namespace {

SweepRow sweep_row(double theta, double gamma, long n) {
  const ModelParams p(n, theta, gamma);
  const SpectrumResult s = spectrum(p);
  return SweepRow{n, qfi(p).qfi, s.gap, s.log_gap, s.below_numeric_floor};
}

TradeoffPoint assemble(double theta, double gamma, std::vector<SweepRow> rows) {
  std::vector<ScalingPoint> f_pts;
  std::vector<long> g_n;
  std::vector<double> g_log;
  for (const SweepRow& r : rows) {
    f_pts.push_back({r.n, r.qfi});
    // An exactly singular block has no finite log gap and is left out.
    if (std::isfinite(r.log_gap)) {
      g_n.push_back(r.n);
      g_log.push_back(r.log_gap);
    }
  }
  ScalingFit f_fit = fit_exponent(f_pts, FitModel::PowerLaw);
  ScalingFit g_fit;
  if (g_n.size() == rows.size()) {
    g_fit = fit_exponent_log(g_n, g_log, FitModel::Auto);
  } else {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    g_fit = ScalingFit{nan, nan, 0.0, Regime::NumericFloor, g_n, {}, nan, nan};
  }
  std::optional<double> c2;
  if (g_fit.regime == Regime::PowerLaw) c2 = g_fit.exponent;
  const Regime regime = g_fit.regime;
  const double c1 = f_fit.exponent;
  return TradeoffPoint{theta, gamma, c1, c2, regime, std::move(f_fit), std::move(g_fit),
                       std::move(rows)};
}

void validate_grid(const std::vector<long>& n_grid) {
  if (n_grid.size() < 4) throw DomainError("n_grid needs at least 4 points");
  for (long n : n_grid)
    if (n > kMaxSvdN)
      throw SizeLimitError("n_grid exceeds the SVD ceiling " +
                           std::to_string(kMaxSvdN));
}

}  // namespace

TradeoffPoint scan_c1_c2(double theta, double gamma, const std::vector<long>& n_grid,
                         int jobs) {
  validate_grid(n_grid);
  auto rows = parallel_map<SweepRow>(n_grid.size(), jobs, [&](std::size_t i) {
    return sweep_row(theta, gamma, n_grid[i]);
  });
  return assemble(theta, gamma, std::move(rows));
}

GammaSweep gamma_sweep(double theta, const std::vector<double>& gamma_grid,
                       const std::vector<long>& n_grid, int jobs) {
  validate_grid(n_grid);
  if (gamma_grid.empty()) throw DomainError("gamma grid is empty");
  const std::size_t per = n_grid.size();
  // One task per (gamma, N) pair; largest N first within the flat index keeps
  // the expensive decompositions from piling up at the end.
  auto rows = parallel_map<SweepRow>(gamma_grid.size() * per, jobs, [&](std::size_t i) {
    const std::size_t gi = i / per;
    const std::size_t ni = per - 1 - i % per;
    return sweep_row(theta, gamma_grid[gi], n_grid[ni]);
  });
  GammaSweep sweep{theta, {}, std::nullopt};
  for (std::size_t gi = 0; gi < gamma_grid.size(); ++gi) {
    std::vector<SweepRow> mine(per);
    for (std::size_t k = 0; k < per; ++k) mine[per - 1 - k] = rows[gi * per + k];
    sweep.points.push_back(assemble(theta, gamma_grid[gi], std::move(mine)));
    if (!sweep.exponential_onset && sweep.points.back().gap_regime != Regime::PowerLaw)
      sweep.exponential_onset = gamma_grid[gi];
  }
  return sweep;
}

std::vector<double> isotonic(const std::vector<double>& values, bool increasing) {
  // Blocks of (mean, weight); merge while the order is violated.
  std::vector<double> mean;
  std::vector<std::size_t> weight;
  for (double v : values) {
    mean.push_back(increasing ? v : -v);
    weight.push_back(1);
    while (mean.size() > 1 && mean[mean.size() - 2] > mean.back()) {
      const std::size_t w2 = weight.back();
      const double m2 = mean.back();
      mean.pop_back(), weight.pop_back();
      const auto w1 = static_cast<double>(weight.back());
      mean.back() = (mean.back() * w1 + m2 * static_cast<double>(w2)) / (w1 + static_cast<double>(w2));
      weight.back() += w2;
    }
  }
  std::vector<double> out;
  out.reserve(values.size());
  for (std::size_t b = 0; b < mean.size(); ++b)
    out.insert(out.end(), weight[b], increasing ? mean[b] : -mean[b]);
  return out;
}

namespace {

constexpr double kEndpointSlack = 1e-9;

// Locates target in the monotone sequence `key` (ascending when `ascending`)
// and returns the interpolation position (segment, fraction).
std::optional<std::pair<std::size_t, double>> locate(const std::vector<double>& key,
                                                     double target, bool ascending) {
  if (key.empty()) return std::nullopt;
  const auto ordered = [&](double lo, double hi) {
    return ascending ? (lo <= target && target <= hi) : (lo >= target && target >= hi);
  };
  if (std::fabs(key.front() - target) <= kEndpointSlack) return std::pair{std::size_t{0}, 0.0};
  for (std::size_t i = 0; i + 1 < key.size(); ++i) {
    if (!ordered(key[i], key[i + 1])) continue;
    const double span = key[i + 1] - key[i];
    const double f = span == 0.0 ? 0.0 : (target - key[i]) / span;
    return std::pair{i, f};
  }
  if (std::fabs(key.back() - target) <= kEndpointSlack)
    return std::pair{key.size() - 1, 0.0};
  return std::nullopt;
}

double lerp_at(const std::vector<double>& v, std::size_t i, double f) {
  if (i + 1 >= v.size()) return v[i];
  return v[i] + f * (v[i + 1] - v[i]);
}

}  // namespace

Frontier tradeoff_frontier(const GammaSweep& sweep, const std::vector<double>& c1_targets,
                           const std::vector<double>& c2_targets) {
  if (std::fabs(sweep.theta) > 0.44 * std::numbers::pi + 1e-12)
    throw DomainError("trade-off frontier is defined only for |theta| <= 0.44 pi");

  // Power-law segment before the exponential onset, ordered by gamma.
  std::vector<const TradeoffPoint*> usable;
  for (const TradeoffPoint& p : sweep.points) usable.push_back(&p);
  std::sort(usable.begin(), usable.end(),
            [](const TradeoffPoint* a, const TradeoffPoint* b) { return a->gamma < b->gamma; });
  std::vector<double> gammas, c1, c2;
  for (const TradeoffPoint* p : usable) {
    if (!p->c2) break;
    gammas.push_back(p->gamma);
    c1.push_back(p->c1);
    c2.push_back(*p->c2);
  }
  const std::vector<double> c1_mono = isotonic(c1, true);
  const std::vector<double> c2_mono = isotonic(c2, false);

  Frontier out{sweep.theta, {}, {}};
  for (double target : c1_targets) {
    FrontierEntry e{target, std::nullopt, std::nullopt, -0.5 * target};
    if (auto pos = locate(c1_mono, target, true)) {
      e.value = lerp_at(c2_mono, pos->first, pos->second);
      e.gamma = lerp_at(gammas, pos->first, pos->second);
    }
    out.c2_for_c1.push_back(e);
  }
  for (double target : c2_targets) {
    FrontierEntry e{target, std::nullopt, std::nullopt, -2.0 * target};
    if (auto pos = locate(c2_mono, target, false)) {
      e.value = lerp_at(c1_mono, pos->first, pos->second);
      e.gamma = lerp_at(gammas, pos->first, pos->second);
    }
    out.c1_for_c2.push_back(e);
  }
  return out;
}

}  // namespace fslsense
