#pragma once

#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "model.hpp"

namespace nmqed {

enum class Mode { SpectrumNumeric, SpectrumAnalytic, Correlation, Peaks, Scan };
enum class Pipeline { Numeric, Analytic };

// Which frequency keys the config used; detunings are the default form
// (stored as omega_a = Delta_a, omega_c = Delta_c, omega_p = 0).
enum class FreqForm { Detunings, Lab };

struct GridSpec {
  std::optional<double> omega_min, omega_max;
  std::optional<int> omega_points;
  std::optional<double> tau_max, tau_step;
  bool operator==(const GridSpec&) const = default;
};

struct ScanSpec {
  std::string param;  // one of the Params fields
  std::vector<double> values;
  bool operator==(const ScanSpec&) const = default;
};

struct RunConfig {
  Params params{};
  FreqForm freq_form = FreqForm::Detunings;
  Mode mode = Mode::SpectrumNumeric;
  Pipeline pipeline = Pipeline::Numeric;  // used by peaks and scan modes
  std::optional<ScanSpec> scan;
  GridSpec grids;
  std::string out = "nmqed_out.csv";
  int workers = 1;
  bool allow_negative_chi = false;

  bool operator==(const RunConfig& o) const;

  // internal: whether a frequency key was given explicitly (guards against
  // mixing detuning and lab-frame forms); not part of value identity
  bool freq_explicit = false;
};

// Flat `key = value` text, UTF-8, # comments. Unknown keys, unparsable
// numbers, and constraint violations raise ConfigError with line attribution.
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

// Single key=value application (command-line flags); flags take precedence
// simply by being applied after the file. Throws ConfigError without line
// attribution (the caller knows the flag name).
void apply_key(RunConfig& cfg, const std::string& key, const std::string& value);

// Canonical serialization; parse_config_text(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& cfg);

// Parameter/mode constraint checks; returns advisory warnings.
std::vector<std::string> validate_config(const RunConfig& cfg);

struct RunResult {
  Status status = Status::Ok;          // Ok, or NumericsError for soft diagnostics
  std::vector<std::string> files;      // outputs written
  std::vector<std::string> warnings;   // advisory (validation)
  std::vector<std::string> diagnostics;  // numerical diagnostics (status = 3)
  std::string summary;                 // human-readable report
};

// Executes the configured mode. Output is deterministic: identical configs
// produce byte-identical files. Hard failures throw; soft numerical
// diagnostics are reported in the result with status NumericsError.
RunResult run(const RunConfig& cfg);

std::vector<std::string> scannable_params();
void set_scan_param(Params& p, const std::string& name, double value);

}  // namespace nmqed
