#pragma once

// Deterministic text output and run configuration.
//
// Floats are written with 17 significant digits and a '.' separator, lines end
// in '\n', and nothing time- or host-dependent is recorded, so identical
// configurations produce byte-identical files.

#include <filesystem>
#include <json.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fslsense/errors.hpp"
#include "fslsense/hardware_map.hpp"

namespace fslsense {

inline constexpr int kFormatVersion = 1;

std::string format_double(double x);

using CsvCell = std::variant<std::monostate, double, long, std::string>;

class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);
  /// Row length must match the header.
  void add_row(const std::vector<CsvCell>& row);
  const std::string& str() const { return text_; }
  std::size_t columns() const { return columns_; }

 private:
  std::size_t columns_;
  std::string text_;
};

/// Field quoted when it contains ',', '"', '\r' or '\n'.
std::string csv_escape(std::string_view field);

void write_text_file(const std::filesystem::path& path, std::string_view text);

/// Two-space indented dump with a trailing newline.
std::string dump_json(const nlohmann::ordered_json& doc);

/// Sidecar path for an output file: "<out>.meta.json".
std::filesystem::path sidecar_path(const std::filesystem::path& out);

/// Raised for configuration problems; `key` names the offending entry.
class ConfigError : public DomainError {
 public:
  ConfigError(std::string key, const std::string& what)
      : DomainError(what), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

/// Every field optional so that a file and command-line flags can be layered.
/// Angles are in units of pi.
struct RunConfig {
  std::optional<int> format_version;
  std::optional<long> n;
  std::optional<double> theta;
  std::optional<double> gamma;
  std::optional<double> g;
  std::optional<long> nmin, nmax;
  std::optional<int> points;
  std::optional<double> gamma_min, gamma_max;
  std::optional<int> gamma_points;
  std::optional<double> theta_min, theta_max;
  std::optional<int> theta_points;
  std::optional<double> x_min, x_max, y_min, y_max;
  std::optional<int> x_points, y_points;
  std::optional<int> ksamples;
  std::optional<int> s_samples;
  std::optional<double> h;
  std::optional<std::vector<double>> c1_targets, c2_targets;
  std::optional<std::string> out;
  std::optional<std::string> sweep_out;
  std::optional<int> jobs;
  std::optional<double> tol;
  std::optional<CircuitParams> circuit;

  /// Fields set in `over` replace those here.
  void merge_from(const RunConfig& over);
};

/// Parses a JSON object. Unknown keys, wrong types and a mismatched
/// format_version raise ConfigError.
RunConfig parse_config(std::string_view json_text);
RunConfig load_config(const std::filesystem::path& path);

/// Set fields as a JSON object, keys in declaration order.
nlohmann::ordered_json to_json(const RunConfig& cfg);

nlohmann::ordered_json to_json(const CircuitParams& circuit);

}  // namespace fslsense
