#include "fslsense/io.hpp"

#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace fslsense {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  // fmt is locale independent unless asked otherwise.
  return fmt::format("{:.17g}", x);
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
  if (header.empty()) throw DomainError("CSV header is empty");
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) text_ += ',';
    text_ += csv_escape(header[i]);
  }
  text_ += '\n';
}

void CsvWriter::add_row(const std::vector<CsvCell>& row) {
  if (row.size() != columns_)
    throw DomainError(fmt::format("CSV row has {} cells, header has {}", row.size(), columns_));
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) text_ += ',';
    std::visit(
        [this](const auto& cell) {
          using T = std::decay_t<decltype(cell)>;
          if constexpr (std::is_same_v<T, double>)
            text_ += format_double(cell);
          else if constexpr (std::is_same_v<T, long>)
            text_ += std::to_string(cell);
          else if constexpr (std::is_same_v<T, std::string>)
            text_ += csv_escape(cell);
        },
        row[i]);
  }
  text_ += '\n';
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  f.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!f) throw std::runtime_error("write failed: " + path.string());
}

std::string dump_json(const nlohmann::ordered_json& doc) { return doc.dump(2) + "\n"; }

std::filesystem::path sidecar_path(const std::filesystem::path& out) {
  return std::filesystem::path(out.string() + ".meta.json");
}

void RunConfig::merge_from(const RunConfig& o) {
  auto take = [](auto& dst, const auto& src) {
    if (src) dst = src;
  };
  take(format_version, o.format_version);
  take(n, o.n);
  take(theta, o.theta);
  take(gamma, o.gamma);
  take(g, o.g);
  take(nmin, o.nmin);
  take(nmax, o.nmax);
  take(points, o.points);
  take(gamma_min, o.gamma_min);
  take(gamma_max, o.gamma_max);
  take(gamma_points, o.gamma_points);
  take(theta_min, o.theta_min);
  take(theta_max, o.theta_max);
  take(theta_points, o.theta_points);
  take(x_min, o.x_min);
  take(x_max, o.x_max);
  take(y_min, o.y_min);
  take(y_max, o.y_max);
  take(x_points, o.x_points);
  take(y_points, o.y_points);
  take(ksamples, o.ksamples);
  take(s_samples, o.s_samples);
  take(h, o.h);
  take(c1_targets, o.c1_targets);
  take(c2_targets, o.c2_targets);
  take(out, o.out);
  take(sweep_out, o.sweep_out);
  take(jobs, o.jobs);
  take(tol, o.tol);
  take(circuit, o.circuit);
}

namespace {

using json = nlohmann::json;

double as_double(const json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError(key, "config key '" + key + "' must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(key, "config key '" + key + "' must be finite");
  return d;
}

long as_long(const json& v, const std::string& key) {
  if (!v.is_number_integer())
    throw ConfigError(key, "config key '" + key + "' must be an integer");
  return v.get<long>();
}

std::string as_string(const json& v, const std::string& key) {
  if (!v.is_string()) throw ConfigError(key, "config key '" + key + "' must be a string");
  return v.get<std::string>();
}

std::vector<double> as_double_list(const json& v, const std::string& key) {
  if (!v.is_array()) throw ConfigError(key, "config key '" + key + "' must be an array");
  std::vector<double> out;
  for (const json& e : v) out.push_back(as_double(e, key));
  return out;
}

CircuitParams parse_circuit(const json& v) {
  if (!v.is_object()) throw ConfigError("circuit", "config key 'circuit' must be an object");
  CircuitParams c;
  const std::map<std::string, double CircuitParams::*> fields = {
      {"g_a", &CircuitParams::g_a},         {"g_b", &CircuitParams::g_b},
      {"omega_a", &CircuitParams::omega_a}, {"omega_b", &CircuitParams::omega_b},
      {"omega_z", &CircuitParams::omega_z}, {"omega_x", &CircuitParams::omega_x},
      {"drive_amp", &CircuitParams::drive_amp}, {"drive_freq", &CircuitParams::drive_freq},
      {"phase", &CircuitParams::phase}};
  for (const auto& [key, value] : v.items()) {
    const auto it = fields.find(key);
    if (it == fields.end())
      throw ConfigError("circuit." + key, "unknown config key 'circuit." + key + "'");
    c.*(it->second) = as_double(value, "circuit." + key);
  }
  for (const char* required : {"omega_a", "omega_b", "omega_z", "drive_freq"})
    if (!v.contains(required))
      throw ConfigError(std::string("circuit.") + required,
                        std::string("missing config key 'circuit.") + required + "'");
  return c;
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("", "config must be a JSON object");

  RunConfig cfg;
  using Setter = std::function<void(const json&, const std::string&)>;
  auto dbl = [](std::optional<double>& dst) -> Setter {
    return [&dst](const json& v, const std::string& k) { dst = as_double(v, k); };
  };
  auto lng = [](std::optional<long>& dst) -> Setter {
    return [&dst](const json& v, const std::string& k) { dst = as_long(v, k); };
  };
  auto itg = [](std::optional<int>& dst) -> Setter {
    return [&dst](const json& v, const std::string& k) {
      dst = static_cast<int>(as_long(v, k));
    };
  };
  auto str = [](std::optional<std::string>& dst) -> Setter {
    return [&dst](const json& v, const std::string& k) { dst = as_string(v, k); };
  };
  auto lst = [](std::optional<std::vector<double>>& dst) -> Setter {
    return [&dst](const json& v, const std::string& k) { dst = as_double_list(v, k); };
  };
  const std::map<std::string, Setter> setters = {
      {"format_version", itg(cfg.format_version)},
      {"n", lng(cfg.n)},
      {"theta", dbl(cfg.theta)},
      {"gamma", dbl(cfg.gamma)},
      {"g", dbl(cfg.g)},
      {"nmin", lng(cfg.nmin)},
      {"nmax", lng(cfg.nmax)},
      {"points", itg(cfg.points)},
      {"gamma_min", dbl(cfg.gamma_min)},
      {"gamma_max", dbl(cfg.gamma_max)},
      {"gamma_points", itg(cfg.gamma_points)},
      {"theta_min", dbl(cfg.theta_min)},
      {"theta_max", dbl(cfg.theta_max)},
      {"theta_points", itg(cfg.theta_points)},
      {"x_min", dbl(cfg.x_min)},
      {"x_max", dbl(cfg.x_max)},
      {"y_min", dbl(cfg.y_min)},
      {"y_max", dbl(cfg.y_max)},
      {"x_points", itg(cfg.x_points)},
      {"y_points", itg(cfg.y_points)},
      {"ksamples", itg(cfg.ksamples)},
      {"s_samples", itg(cfg.s_samples)},
      {"h", dbl(cfg.h)},
      {"c1_targets", lst(cfg.c1_targets)},
      {"c2_targets", lst(cfg.c2_targets)},
      {"out", str(cfg.out)},
      {"sweep_out", str(cfg.sweep_out)},
      {"jobs", itg(cfg.jobs)},
      {"tol", dbl(cfg.tol)},
      {"circuit", [&cfg](const json& v, const std::string&) { cfg.circuit = parse_circuit(v); }},
  };
  for (const auto& [key, value] : doc.items()) {
    const auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError(key, "unknown config key '" + key + "'");
    it->second(value, key);
  }
  if (cfg.format_version && *cfg.format_version != kFormatVersion)
    throw ConfigError("format_version",
                      fmt::format("unsupported format_version {} (expected {})",
                                  *cfg.format_version, kFormatVersion));
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("", "cannot read config file " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

nlohmann::ordered_json to_json(const CircuitParams& c) {
  nlohmann::ordered_json j;
  j["g_a"] = c.g_a;
  j["g_b"] = c.g_b;
  j["omega_a"] = c.omega_a;
  j["omega_b"] = c.omega_b;
  j["omega_z"] = c.omega_z;
  j["omega_x"] = c.omega_x;
  j["drive_amp"] = c.drive_amp;
  j["drive_freq"] = c.drive_freq;
  j["phase"] = c.phase;
  return j;
}

nlohmann::ordered_json to_json(const RunConfig& c) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  auto put = [&j](const char* key, const auto& value) {
    if (value) j[key] = *value;
  };
  put("n", c.n);
  put("theta", c.theta);
  put("gamma", c.gamma);
  put("g", c.g);
  put("nmin", c.nmin);
  put("nmax", c.nmax);
  put("points", c.points);
  put("gamma_min", c.gamma_min);
  put("gamma_max", c.gamma_max);
  put("gamma_points", c.gamma_points);
  put("theta_min", c.theta_min);
  put("theta_max", c.theta_max);
  put("theta_points", c.theta_points);
  put("x_min", c.x_min);
  put("x_max", c.x_max);
  put("y_min", c.y_min);
  put("y_max", c.y_max);
  put("x_points", c.x_points);
  put("y_points", c.y_points);
  put("ksamples", c.ksamples);
  put("s_samples", c.s_samples);
  put("h", c.h);
  put("c1_targets", c.c1_targets);
  put("c2_targets", c.c2_targets);
  put("out", c.out);
  put("sweep_out", c.sweep_out);
  put("jobs", c.jobs);
  put("tol", c.tol);
  if (c.circuit) j["circuit"] = to_json(*c.circuit);
  return j;
}

}  // namespace fslsense
