// fslsense command-line front end.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fmt/format.h>
#include <iostream>
#include <map>
#include <numbers>
#include <set>

#include "fslsense/errors.hpp"
#include "fslsense/geometry.hpp"
#include "fslsense/hardware_map.hpp"
#include "fslsense/io.hpp"
#include "fslsense/metrology.hpp"
#include "fslsense/model.hpp"
#include "fslsense/parallel.hpp"
#include "fslsense/scaling.hpp"
#include "fslsense/spectrum.hpp"
#include "fslsense/topology.hpp"
#include "fslsense/verify.hpp"
#include "fslsense/zero_mode.hpp"

namespace {

using namespace fslsense;
using ojson = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumeric = 2;
constexpr int kExitVerify = 3;
constexpr double kPi = std::numbers::pi;

// Keys each command reads; anything else in a config file is rejected.
const std::map<std::string, std::set<std::string>>& command_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"qfi", {"n", "theta", "gamma", "g", "h", "out"}},
      {"gap", {"n", "theta", "gamma", "g", "out"}},
      {"zeromode", {"n", "theta", "gamma", "g", "out"}},
      {"curve", {"n", "theta", "gamma", "g", "s_samples", "out"}},
      {"phasediagram",
       {"x_min", "x_max", "x_points", "y_min", "y_max", "y_points", "ksamples", "out"}},
      {"scaling",
       {"theta", "gamma", "nmin", "nmax", "points", "gamma_min", "gamma_max", "gamma_points",
        "out", "sweep_out", "jobs"}},
      {"tradeoff",
       {"theta", "nmin", "nmax", "points", "gamma_min", "gamma_max", "gamma_points",
        "c1_targets", "c2_targets", "out", "sweep_out", "jobs"}},
      {"boundary", {"theta_min", "theta_max", "theta_points", "out"}},
      {"circuit", {"n", "circuit", "tol", "out"}},
      {"verify", {"n", "ksamples", "tol", "out", "jobs"}},
  };
  return keys;
}

struct Flags {
  RunConfig cfg;
  std::string config_path;
};

void add_flags(CLI::App* sub, Flags& f, const std::set<std::string>& keys) {
  RunConfig& c = f.cfg;
  auto dbl = [sub](const char* name, std::optional<double>& dst, const char* help) {
    sub->add_option_function<double>(name, [&dst](double v) { dst = v; }, help);
  };
  auto lng = [sub](const char* name, std::optional<long>& dst, const char* help) {
    sub->add_option_function<long>(name, [&dst](long v) { dst = v; }, help);
  };
  auto itg = [sub](const char* name, std::optional<int>& dst, const char* help) {
    sub->add_option_function<int>(name, [&dst](int v) { dst = v; }, help);
  };
  auto lst = [sub](const char* name, std::optional<std::vector<double>>& dst, const char* help) {
    sub->add_option_function<std::vector<double>>(
           name, [&dst](const std::vector<double>& v) { dst = v; }, help)
        ->delimiter(',');
  };
  auto has = [&keys](const char* k) { return keys.count(k) > 0; };

  if (has("n")) lng("--n", c.n, "total excitation number N");
  if (has("theta")) dbl("--theta", c.theta, "sensing angle in units of pi");
  if (has("gamma")) dbl("--gamma", c.gamma, "nonlinear strength");
  if (has("g")) dbl("--g", c.g, "coupling scale");
  if (has("h")) dbl("--step", c.h, "finite-difference step for the CFI (config key h)");
  if (has("nmin")) lng("--nmin", c.nmin, "smallest N of the scaling grid");
  if (has("nmax")) lng("--nmax", c.nmax, "largest N of the scaling grid");
  if (has("points")) itg("--points", c.points, "number of log-spaced N values");
  if (has("gamma_min")) dbl("--gamma-min", c.gamma_min, "gamma sweep start");
  if (has("gamma_max")) dbl("--gamma-max", c.gamma_max, "gamma sweep end");
  if (has("gamma_points")) itg("--gamma-points", c.gamma_points, "gamma sweep points");
  if (has("theta_min")) dbl("--theta-min", c.theta_min, "theta grid start (units of pi)");
  if (has("theta_max")) dbl("--theta-max", c.theta_max, "theta grid end (units of pi)");
  if (has("theta_points")) itg("--theta-points", c.theta_points, "theta grid points");
  if (has("x_min")) dbl("--x-min", c.x_min, "raster x = w/v start");
  if (has("x_max")) dbl("--x-max", c.x_max, "raster x end");
  if (has("x_points")) itg("--x-points", c.x_points, "raster x points");
  if (has("y_min")) dbl("--y-min", c.y_min, "raster y = t/v start");
  if (has("y_max")) dbl("--y-max", c.y_max, "raster y end");
  if (has("y_points")) itg("--y-points", c.y_points, "raster y points");
  if (has("ksamples")) itg("--ksamples", c.ksamples, "k samples of the winding integral");
  if (has("s_samples"))
    itg("--s-samples", c.s_samples, "emit the large-N continuum curve with this many samples");
  if (has("c1_targets")) lst("--c1-targets", c.c1_targets, "comma-separated target c1 values");
  if (has("c2_targets")) lst("--c2-targets", c.c2_targets, "comma-separated target c2 values");
  if (has("tol")) dbl("--tol", c.tol, "tolerance override");
  if (has("jobs")) itg("--jobs", c.jobs, "worker threads (default FSLSENSE_JOBS or all cores)");
  if (has("out"))
    sub->add_option_function<std::string>(
        "--out", [&c](const std::string& v) { c.out = v; }, "output CSV path (default stdout)");
  if (has("sweep_out"))
    sub->add_option_function<std::string>(
        "--sweep-out", [&c](const std::string& v) { c.sweep_out = v; },
        "also write the raw (gamma, N, F, gap) rows here");
  sub->add_option("--config", f.config_path, "JSON config file; flags override its values");
}

RunConfig resolve(const std::string& command, const Flags& flags) {
  RunConfig cfg;
  if (!flags.config_path.empty()) {
    cfg = load_config(flags.config_path);
    const auto& allowed = command_keys().at(command);
    const ojson given = to_json(cfg);
    for (const auto& item : given.items())
      if (const std::string& key = item.key(); !allowed.count(key))
        throw ConfigError(key, "config key '" + key + "' is not used by '" + command + "'");
  }
  cfg.merge_from(flags.cfg);
  return cfg;
}

int jobs_of(const RunConfig& c) {
  const int j = c.jobs.value_or(default_jobs());
  if (j < 1) throw ConfigError("jobs", "jobs must be >= 1");
  return j;
}

ModelParams model_of(const RunConfig& c) {
  return ModelParams::from_units_of_pi(c.n.value_or(100), c.theta.value_or(0.2),
                                       c.gamma.value_or(0.0), c.g.value_or(1.0));
}

std::vector<long> n_grid_of(const RunConfig& c) {
  return log_grid(c.nmin.value_or(100), c.nmax.value_or(2000), c.points.value_or(8));
}

std::vector<double> linear_grid(double lo, double hi, int points, const char* key) {
  if (points < 1) throw ConfigError(key, std::string(key) + " must be >= 1");
  if (points == 1) return {lo};
  std::vector<double> out;
  for (int i = 0; i < points; ++i)
    out.push_back(lo + (hi - lo) * static_cast<double>(i) / (points - 1));
  return out;
}

std::vector<double> gamma_grid_of(const RunConfig& c, int default_points) {
  return linear_grid(c.gamma_min.value_or(0.0), c.gamma_max.value_or(1.2),
                     c.gamma_points.value_or(default_points), "gamma_points");
}

ojson metadata(const std::string& command, const RunConfig& cfg,
               const std::vector<std::string>& columns) {
  ojson m;
  m["tool"] = "fslsense";
  m["version"] = FSLSENSE_VERSION;
  m["format_version"] = kFormatVersion;
  m["command"] = command;
  ojson params = to_json(cfg);
  // Worker count and output paths never change results, so they are left
  // out to keep sidecars identical across machines and destinations.
  for (const char* key : {"jobs", "out", "sweep_out"}) params.erase(key);
  m["parameters"] = params;
  m["columns"] = columns;
  m["angle_units"] = "pi";
  m["basis"] = "down sites n=0..N (|down,N-n,n>), then up sites m=1..N (|up,N-m,m-1>)";
  return m;
}

// Writes `csv` to cfg.out with a sidecar, or to stdout when no path is set.
void emit(const std::string& command, const RunConfig& cfg, const std::vector<std::string>& header,
          const CsvWriter& csv, ojson results = ojson::object()) {
  if (cfg.out) {
    ojson meta = metadata(command, cfg, header);
    meta["results"] = std::move(results);
    write_text_file(*cfg.out, csv.str());
    write_text_file(sidecar_path(*cfg.out), dump_json(meta));
  } else {
    std::fwrite(csv.str().data(), 1, csv.str().size(), stdout);
  }
}

CsvCell opt_cell(const std::optional<double>& v) {
  return v ? CsvCell(*v) : CsvCell(std::monostate{});
}

CsvCell winding_cell(const Winding& w) {
  return w.is_critical() ? CsvCell(std::string("critical")) : CsvCell(static_cast<long>(w.value()));
}

ojson opt_json(const std::optional<double>& v) { return v ? ojson(*v) : ojson(nullptr); }

// ---- commands ---------------------------------------------------------------

int cmd_qfi(const RunConfig& c) {
  const ModelParams p = model_of(c);
  const FisherResult r = cfi_photon_number(p, c.h.value_or(1e-5));
  const std::vector<std::string> header = {"n", "theta_over_pi", "gamma", "g", "qfi", "cfi"};
  CsvWriter csv(header);
  csv.add_row({p.n(), c.theta.value_or(0.2), p.gamma(), p.g(), r.qfi, *r.cfi});
  emit("qfi", c, header, csv, {{"method", to_string(r.method)}});
  return kExitOk;
}

int cmd_gap(const RunConfig& c) {
  const ModelParams p = model_of(c);
  const SpectrumResult s = spectrum(p);
  const std::vector<std::string> header = {"n",   "theta_over_pi", "gamma",
                                           "g",   "gap",           "log_gap",
                                           "sigma_max", "below_numeric_floor"};
  CsvWriter csv(header);
  csv.add_row({p.n(), c.theta.value_or(0.2), p.gamma(), p.g(), s.gap, s.log_gap,
               s.singular_values.front(), static_cast<long>(s.below_numeric_floor)});
  emit("gap", c, header, csv,
       {{"gap_method", s.refined ? "multiprecision power iteration" : "band bidiagonal SVD"}});
  return kExitOk;
}

int cmd_zeromode(const RunConfig& c) {
  const ModelParams p = model_of(c);
  const ZeroMode z = solve_zero_mode_dtheta(p);
  const std::vector<double> prob = probabilities(z);
  const std::vector<std::string> header = {"n_b", "u", "du_dtheta", "p"};
  CsvWriter csv(header);
  for (std::size_t i = 0; i < z.amplitudes.size(); ++i)
    csv.add_row({static_cast<long>(i), z.amplitudes[i], z.dtheta[i], prob[i]});
  emit("zeromode", c, header, csv, {{"recursion_residual", recursion_residual(z)}});
  return kExitOk;
}

int cmd_curve(const RunConfig& c) {
  const ModelParams p = model_of(c);
  CellCurve curve;
  std::vector<std::string> header;
  if (c.s_samples) {
    curve = continuum_curve(p.theta(), p.gamma(), *c.s_samples);
    header = {"s", "x", "y", "winding"};
  } else {
    curve = cell_curve(p);
    header = {"cell", "x", "y", "winding"};
  }
  CsvWriter csv(header);
  for (std::size_t i = 0; i < curve.points.size(); ++i) {
    const PhasePoint& pt = curve.points[i];
    const CsvCell first = c.s_samples ? CsvCell(curve.s[i]) : CsvCell(static_cast<long>(i + 1));
    csv.add_row({first, pt.x, pt.y, winding_cell(pt.winding)});
  }
  ojson crossings = ojson::array();
  for (const Crossing& x : curve.crossings)
    crossings.push_back({{"segment", x.segment}, {"boundary", x.boundary}});
  const double d = distance_to_w2_boundary(curve);
  emit("curve", c, header, csv,
       {{"crossings", crossings},
        {"distance_to_w2_boundary", std::isfinite(d) ? ojson(d) : ojson(nullptr)}});
  return kExitOk;
}

int cmd_phasediagram(const RunConfig& c) {
  const auto cells = phase_diagram_raster(c.x_min.value_or(-4.0), c.x_max.value_or(4.0),
                                          c.x_points.value_or(161), c.y_min.value_or(-2.0),
                                          c.y_max.value_or(3.0), c.y_points.value_or(101));
  const std::vector<std::string> header = {"x", "y", "W"};
  CsvWriter csv(header);
  for (const RasterCell& cell : cells) csv.add_row({cell.x, cell.y, winding_cell(cell.winding)});
  ojson lines = ojson::array();
  for (const PhaseBoundary& b : phase_boundaries().lines)
    lines.push_back({{"id", b.id},
                     {"equation", b.equation},
                     {"x_min", std::isfinite(b.x_min) ? ojson(b.x_min) : ojson(nullptr)},
                     {"x_max", std::isfinite(b.x_max) ? ojson(b.x_max) : ojson(nullptr)},
                     {"separates", b.separates}});
  emit("phasediagram", c, header, csv,
       {{"boundaries", lines}, {"multicritical", ojson::array({{2.0, 1.0}, {-2.0, 1.0}})}});
  return kExitOk;
}

void add_sweep_rows(CsvWriter& csv, const TradeoffPoint& pt) {
  for (const SweepRow& r : pt.rows)
    csv.add_row({pt.gamma, r.n, r.qfi, r.gap, r.log_gap, static_cast<long>(r.gap_below_floor)});
}

const std::vector<std::string> kSweepHeader = {"gamma", "n", "qfi", "gap", "log_gap", "gap_below_floor"};
const std::vector<std::string> kScanHeader = {"theta_over_pi", "gamma",     "c1",
                                              "c2",            "gap_regime", "r2_qfi",
                                              "r2_gap",        "gap_exponential_rate"};

void add_scan_row(CsvWriter& csv, double theta_over_pi, const TradeoffPoint& pt) {
  const CsvCell rate = pt.gap_regime == Regime::Exponential ? CsvCell(pt.gap_fit.exponent)
                                                            : CsvCell(std::monostate{});
  csv.add_row({theta_over_pi, pt.gamma, pt.c1, opt_cell(pt.c2),
               std::string(to_string(pt.gap_regime)), pt.qfi_fit.r_squared,
               pt.gap_fit.r_squared, rate});
}

void write_sweep(const std::string& command, const RunConfig& c, const CsvWriter& sweep) {
  if (!c.sweep_out) return;
  write_text_file(*c.sweep_out, sweep.str());
  ojson meta = metadata(command, c, kSweepHeader);
  meta["role"] = "raw sweep";
  write_text_file(sidecar_path(*c.sweep_out), dump_json(meta));
}

int cmd_scaling(const RunConfig& c) {
  const double th = c.theta.value_or(0.2);
  const auto n_grid = n_grid_of(c);
  const int jobs = jobs_of(c);
  std::vector<TradeoffPoint> points;
  std::optional<double> onset;
  if (c.gamma_points || c.gamma_min || c.gamma_max) {
    GammaSweep sweep = gamma_sweep(th * kPi, gamma_grid_of(c, 13), n_grid, jobs);
    points = std::move(sweep.points);
    onset = sweep.exponential_onset;
  } else {
    points.push_back(scan_c1_c2(th * kPi, c.gamma.value_or(0.92), n_grid, jobs));
  }
  CsvWriter csv(kScanHeader), sweep(kSweepHeader);
  for (const TradeoffPoint& pt : points) {
    add_scan_row(csv, th, pt);
    add_sweep_rows(sweep, pt);
  }
  write_sweep("scaling", c, sweep);
  emit("scaling", c, kScanHeader, csv,
       {{"n_grid", n_grid}, {"exponential_onset_gamma", opt_json(onset)}});
  return kExitOk;
}

std::vector<double> step_grid(double lo, double hi, double step) {
  std::vector<double> out;
  const int count = static_cast<int>(std::lround((hi - lo) / step));
  for (int i = 0; i <= count; ++i) out.push_back(lo + step * i);
  return out;
}

int cmd_tradeoff(const RunConfig& c) {
  const double th = c.theta.value_or(0.2);
  const auto n_grid = n_grid_of(c);
  const GammaSweep sweep = gamma_sweep(th * kPi, gamma_grid_of(c, 61), n_grid, jobs_of(c));
  const Frontier f = tradeoff_frontier(sweep, c.c1_targets.value_or(step_grid(1.0, 2.0, 0.1)),
                                       c.c2_targets.value_or(step_grid(-1.0, 0.0, 0.1)));
  const std::vector<std::string> header = {"table", "theta_over_pi", "target", "value",
                                           "gamma", "benchmark",     "status"};
  CsvWriter csv(header);
  auto add = [&](const char* table, const FrontierEntry& e) {
    csv.add_row({std::string(table), th, e.target, opt_cell(e.value), opt_cell(e.gamma),
                 e.benchmark, std::string(e.value ? "ok" : "out-of-range")});
  };
  for (const FrontierEntry& e : f.c2_for_c1) add("c2_for_c1", e);
  for (const FrontierEntry& e : f.c1_for_c2) add("c1_for_c2", e);

  CsvWriter raw(kSweepHeader);
  ojson scan = ojson::array();
  for (const TradeoffPoint& pt : sweep.points) {
    add_sweep_rows(raw, pt);
    scan.push_back({{"gamma", pt.gamma},
                    {"c1", pt.c1},
                    {"c2", opt_json(pt.c2)},
                    {"gap_regime", to_string(pt.gap_regime)}});
  }
  write_sweep("tradeoff", c, raw);
  emit("tradeoff", c, header, csv,
       {{"n_grid", n_grid},
        {"exponential_onset_gamma", opt_json(sweep.exponential_onset)},
        {"scan", scan}});
  return kExitOk;
}

int cmd_boundary(const RunConfig& c) {
  const CriticalAngle ca = theta_critical();
  ojson summary;
  summary["theta_c_over_pi"] = ca.theta_c_over_pi;
  summary["x_t"] = ca.x_t;
  summary["tan2_theta_c"] = ca.tan2_theta_c;
  summary["gamma_c"] = ca.gamma_c;
  summary["cubic_residual"] = ca.residual;
  std::cout << dump_json(summary);
  if (!c.out) return kExitOk;

  const auto grid = linear_grid(c.theta_min.value_or(0.0), c.theta_max.value_or(0.49),
                                c.theta_points.value_or(50), "theta_points");
  const std::vector<std::string> header = {"theta_over_pi", "gamma_j", "gamma_t", "x_t", "regime"};
  CsvWriter csv(header);
  for (double th : grid) {
    if (!(th > -0.5 && th < 0.5))
      throw ConfigError("theta_min", "boundary grid needs theta in (-0.5, 0.5) (units of pi)");
    const BoundaryGeometry g = gamma_tangent(th * kPi);
    csv.add_row({th, g.gamma_j, opt_cell(g.gamma_t), opt_cell(g.x_t_selected),
                 std::string(to_string(g.regime))});
  }
  emit("boundary", c, header, csv, summary);
  return kExitOk;
}

int cmd_circuit(const RunConfig& c) {
  if (!c.circuit) throw ConfigError("circuit", "the circuit command needs a 'circuit' config block");
  const long n = c.n.value_or(100);
  const double tol = c.tol.value_or(1e-6);
  const ResonanceCheck res = check_resonance(*c.circuit, tol);
  if (!res.pass)
    throw ConfigError("circuit",
                      fmt::format("resonance conditions fail: residuals {} {} {} exceed {}",
                                  format_double(res.residual_a), format_double(res.residual_b),
                                  format_double(res.residual_cross), format_double(res.tolerance)));
  const EffectiveCouplings e = effective_couplings(*c.circuit, n, tol);
  for (const std::string& w : e.warnings) std::cerr << "warning: " << w << '\n';

  ojson rec;
  rec["n"] = n;
  rec["alpha0"] = e.alpha0;
  rec["beta0"] = e.beta0;
  rec["gamma_bar"] = e.gamma_bar;
  rec["g"] = e.g;
  rec["theta_over_pi"] = e.theta / kPi;
  rec["gamma"] = e.gamma;
  rec["eta_a"] = c.circuit->eta_a();
  rec["eta_b"] = c.circuit->eta_b();
  rec["drive_index"] = c.circuit->drive_index();
  rec["resonance_residuals"] = {res.residual_a, res.residual_b, res.residual_cross};
  rec["warnings"] = e.warnings;
  std::cout << dump_json(rec);
  if (c.out) {
    const std::vector<std::string> header = {"n", "g", "theta_over_pi", "gamma",
                                             "alpha0", "beta0", "gamma_bar"};
    CsvWriter csv(header);
    csv.add_row({n, e.g, e.theta / kPi, e.gamma, e.alpha0, e.beta0, e.gamma_bar});
    emit("circuit", c, header, csv, rec);
  }
  return kExitOk;
}

int cmd_verify(const RunConfig& c) {
  VerifyOptions opt;
  opt.n = c.n.value_or(opt.n);
  if (opt.n > kMaxOracleN)
    throw ConfigError("n", fmt::format("verify uses the dense oracle, N <= {}", kMaxOracleN));
  opt.ksamples = c.ksamples.value_or(opt.ksamples);
  opt.tol = c.tol;
  opt.jobs = jobs_of(c);
  const auto checks = run_invariant_suite(opt);
  const std::vector<std::string> header = {"check", "pass", "measured", "tolerance", "detail"};
  CsvWriter csv(header);
  bool all = true;
  for (const CheckResult& r : checks) {
    all = all && r.pass;
    csv.add_row({r.name, static_cast<long>(r.pass), r.measured, r.tolerance, r.detail});
    std::cerr << (r.pass ? "PASS " : "FAIL ") << r.name << '\n';
  }
  emit("verify", c, header, csv, {{"all_passed", all}});
  return all ? kExitOk : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fock-space-lattice critical sensor toolkit"};
  app.set_version_flag("--version", FSLSENSE_VERSION);
  app.require_subcommand(1);

  using Handler = int (*)(const RunConfig&);
  const std::vector<std::tuple<std::string, std::string, Handler>> commands = {
      {"qfi", "quantum and photon-counting Fisher information of the zero mode", cmd_qfi},
      {"gap", "excitation gap and largest singular value", cmd_gap},
      {"zeromode", "zero-mode amplitudes, derivative and probabilities", cmd_zeromode},
      {"curve", "cell-dependent (w/v, t/v) curve with winding labels", cmd_curve},
      {"phasediagram", "winding-number raster over (x, y)", cmd_phasediagram},
      {"scaling", "fit F ~ N^c1 and gap ~ N^c2, optionally over a gamma sweep", cmd_scaling},
      {"tradeoff", "c1/c2 frontier tables from a gamma sweep", cmd_tradeoff},
      {"boundary", "critical angle and junction/tangency thresholds", cmd_boundary},
      {"circuit", "effective couplings of a circuit-QED realization", cmd_circuit},
      {"verify", "run the invariant suite", cmd_verify},
  };

  std::map<std::string, Flags> flags;
  std::vector<std::pair<CLI::App*, std::string>> subs;
  for (const auto& [name, help, handler] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_flags(sub, flags[name], command_keys().at(name));
    subs.emplace_back(sub, name);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    for (const auto& [sub, name] : subs) {
      if (!sub->parsed()) continue;
      const RunConfig cfg = resolve(name, flags[name]);
      for (const auto& [cname, help, handler] : commands)
        if (cname == name) return handler(cfg);
    }
  } catch (const ConfigError& e) {
    std::cerr << "usage error";
    if (!e.key().empty()) std::cerr << " [" << e.key() << "]";
    std::cerr << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitUsage;
}
