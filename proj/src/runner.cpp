#include "runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "analytic.hpp"
#include "correlation.hpp"
#include "csvio.hpp"
#include "dynamics.hpp"
#include "spectrum.hpp"
#include "version.hpp"

namespace nmqed {

namespace {

double parse_double(const std::string& s, const std::string& key) {
  const char* begin = s.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0')
    throw ConfigError("value for '" + key + "' is not a number: '" + s + "'");
  return v;
}

int parse_int(const std::string& s, const std::string& key) {
  const double v = parse_double(s, key);
  const int i = static_cast<int>(std::llround(v));
  if (v != static_cast<double>(i))
    throw ConfigError("value for '" + key + "' is not an integer: '" + s + "'");
  return i;
}

bool parse_bool(const std::string& s, const std::string& key) {
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw ConfigError("value for '" + key + "' is not a boolean: '" + s + "'");
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

const std::map<std::string, Mode> kModes = {
    {"spectrum-numeric", Mode::SpectrumNumeric},
    {"spectrum-analytic", Mode::SpectrumAnalytic},
    {"correlation", Mode::Correlation},
    {"peaks", Mode::Peaks},
    {"scan", Mode::Scan},
};

std::string mode_name(Mode m) {
  for (const auto& [k, v] : kModes)
    if (v == m) return k;
  return "?";
}

void set_detuning_key(RunConfig& cfg, const std::string& key, double v) {
  if (cfg.freq_explicit && cfg.freq_form == FreqForm::Lab)
    throw ConfigError("cannot mix detuning key '" + key + "' with lab-frame frequency keys");
  if (!cfg.freq_explicit) {
    // switch to a clean detuning representation
    cfg.params.omega_p = 0.0;
    Detunings d = detunings(cfg.params);
    cfg.params.omega_a = d.delta_a;
    cfg.params.omega_c = d.delta_c;
  }
  cfg.freq_form = FreqForm::Detunings;
  cfg.freq_explicit = true;
  cfg.params.omega_p = 0.0;
  if (key == "delta_a") cfg.params.omega_a = v;
  else cfg.params.omega_c = v;
}

void set_lab_key(RunConfig& cfg, const std::string& key, double v) {
  if (cfg.freq_explicit && cfg.freq_form == FreqForm::Detunings)
    throw ConfigError("cannot mix lab-frame frequency key '" + key + "' with detuning keys");
  cfg.freq_form = FreqForm::Lab;
  cfg.freq_explicit = true;
  if (key == "omega_a") cfg.params.omega_a = v;
  else if (key == "omega_c") cfg.params.omega_c = v;
  else cfg.params.omega_p = v;
}

ScanSpec parse_scan(const std::string& value) {
  const auto eq = value.find('=');
  if (eq == std::string::npos)
    throw ConfigError("scan must look like <param>=<v1,v2,...>, got '" + value + "'");
  ScanSpec spec;
  spec.param = trim(value.substr(0, eq));
  const auto names = scannable_params();
  if (std::find(names.begin(), names.end(), spec.param) == names.end())
    throw ConfigError("scan parameter '" + spec.param + "' is not a model parameter");
  std::stringstream ss(value.substr(eq + 1));
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok = trim(tok);
    if (tok.empty()) throw ConfigError("empty value in scan list");
    spec.values.push_back(parse_double(tok, "scan"));
  }
  if (spec.values.empty()) throw ConfigError("scan list is empty");
  if (spec.param == "n_fock")
    for (double v : spec.values)
      if (v != std::floor(v) || v < 1) throw ConfigError("scan over n_fock needs integers >= 1");
  return spec;
}

std::string scan_to_string(const ScanSpec& s) {
  std::string out = s.param + "=";
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    if (i) out += ",";
    out += fmt17(s.values[i]);
  }
  return out;
}

}  // namespace

bool RunConfig::operator==(const RunConfig& o) const {
  return params == o.params && freq_form == o.freq_form && mode == o.mode &&
         pipeline == o.pipeline && scan == o.scan && grids == o.grids && out == o.out &&
         workers == o.workers && allow_negative_chi == o.allow_negative_chi;
}

std::vector<std::string> scannable_params() {
  return {"g",       "xi",      "chi",     "kappa",   "gamma",  "n_fock",
          "delta_a", "delta_c", "omega_a", "omega_c", "omega_p"};
}

void set_scan_param(Params& p, const std::string& name, double value) {
  if (name == "g") p.g = value;
  else if (name == "xi") p.xi = value;
  else if (name == "chi") p.chi = value;
  else if (name == "kappa") p.kappa = value;
  else if (name == "gamma") p.gamma = value;
  else if (name == "n_fock") p.n_fock = static_cast<int>(value);
  else if (name == "delta_a") p.omega_a = p.omega_p + value;
  else if (name == "delta_c") p.omega_c = p.omega_p + value;
  else if (name == "omega_a") p.omega_a = value;
  else if (name == "omega_c") p.omega_c = value;
  else if (name == "omega_p") p.omega_p = value;
  else throw ConfigError("unknown scan parameter '" + name + "'");
}

void apply_key(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "mode") {
    const auto it = kModes.find(value);
    if (it == kModes.end()) throw ConfigError("unknown mode '" + value + "'");
    cfg.mode = it->second;
  } else if (key == "pipeline") {
    if (value == "numeric") cfg.pipeline = Pipeline::Numeric;
    else if (value == "analytic") cfg.pipeline = Pipeline::Analytic;
    else throw ConfigError("unknown pipeline '" + value + "' (numeric|analytic)");
  } else if (key == "out") {
    if (value.empty()) throw ConfigError("out path is empty");
    cfg.out = value;
  } else if (key == "workers") {
    const int w = parse_int(value, key);
    if (w < 1 || w > 64) throw ConfigError("workers must be in [1, 64]");
    cfg.workers = w;
  } else if (key == "allow_negative_chi") {
    cfg.allow_negative_chi = parse_bool(value, key);
  } else if (key == "scan") {
    cfg.scan = parse_scan(value);
  } else if (key == "delta_a" || key == "delta_c") {
    set_detuning_key(cfg, key, parse_double(value, key));
  } else if (key == "omega_a" || key == "omega_c" || key == "omega_p") {
    set_lab_key(cfg, key, parse_double(value, key));
  } else if (key == "g") {
    cfg.params.g = parse_double(value, key);
  } else if (key == "xi") {
    cfg.params.xi = parse_double(value, key);
  } else if (key == "chi") {
    cfg.params.chi = parse_double(value, key);
  } else if (key == "kappa") {
    cfg.params.kappa = parse_double(value, key);
  } else if (key == "gamma") {
    cfg.params.gamma = parse_double(value, key);
  } else if (key == "n_fock") {
    cfg.params.n_fock = parse_int(value, key);
  } else if (key == "omega_min") {
    cfg.grids.omega_min = parse_double(value, key);
  } else if (key == "omega_max") {
    cfg.grids.omega_max = parse_double(value, key);
  } else if (key == "omega_points") {
    cfg.grids.omega_points = parse_int(value, key);
  } else if (key == "tau_max") {
    cfg.grids.tau_max = parse_double(value, key);
  } else if (key == "tau_step") {
    cfg.grids.tau_step = parse_double(value, key);
  } else {
    throw ConfigError("unknown key '" + key + "'");
  }
}

RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      apply_key(cfg, key, value);
    } catch (const Error& e) {
      throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return parse_config_text(os.str());
}

std::string serialize_config(const RunConfig& cfg) {
  std::ostringstream os;
  os << "mode = " << mode_name(cfg.mode) << "\n";
  os << "pipeline = " << (cfg.pipeline == Pipeline::Numeric ? "numeric" : "analytic") << "\n";
  os << "out = " << cfg.out << "\n";
  os << "workers = " << cfg.workers << "\n";
  os << "allow_negative_chi = " << (cfg.allow_negative_chi ? "true" : "false") << "\n";
  if (cfg.freq_form == FreqForm::Detunings) {
    const Detunings d = detunings(cfg.params);
    os << "delta_a = " << fmt17(d.delta_a) << "\n";
    os << "delta_c = " << fmt17(d.delta_c) << "\n";
  } else {
    os << "omega_a = " << fmt17(cfg.params.omega_a) << "\n";
    os << "omega_c = " << fmt17(cfg.params.omega_c) << "\n";
    os << "omega_p = " << fmt17(cfg.params.omega_p) << "\n";
  }
  os << "g = " << fmt17(cfg.params.g) << "\n";
  os << "xi = " << fmt17(cfg.params.xi) << "\n";
  os << "chi = " << fmt17(cfg.params.chi) << "\n";
  os << "kappa = " << fmt17(cfg.params.kappa) << "\n";
  os << "gamma = " << fmt17(cfg.params.gamma) << "\n";
  os << "n_fock = " << cfg.params.n_fock << "\n";
  if (cfg.scan) os << "scan = " << scan_to_string(*cfg.scan) << "\n";
  if (cfg.grids.omega_min) os << "omega_min = " << fmt17(*cfg.grids.omega_min) << "\n";
  if (cfg.grids.omega_max) os << "omega_max = " << fmt17(*cfg.grids.omega_max) << "\n";
  if (cfg.grids.omega_points) os << "omega_points = " << *cfg.grids.omega_points << "\n";
  if (cfg.grids.tau_max) os << "tau_max = " << fmt17(*cfg.grids.tau_max) << "\n";
  if (cfg.grids.tau_step) os << "tau_step = " << fmt17(*cfg.grids.tau_step) << "\n";
  return os.str();
}

std::vector<std::string> validate_config(const RunConfig& cfg) {
  auto warnings = validate_params(cfg.params, cfg.allow_negative_chi);
  if (cfg.mode == Mode::Scan && !cfg.scan)
    throw ConfigError("mode = scan needs a scan = <param>=<values> key");
  if (cfg.grids.omega_min && cfg.grids.omega_max && !(*cfg.grids.omega_min < *cfg.grids.omega_max))
    throw ConfigError("omega_min must be < omega_max");
  if (cfg.grids.omega_points && *cfg.grids.omega_points < 3)
    throw ConfigError("omega_points must be >= 3");
  if (cfg.grids.tau_max && !(*cfg.grids.tau_max > 0)) throw ConfigError("tau_max must be > 0");
  if (cfg.grids.tau_step && !(*cfg.grids.tau_step > 0)) throw ConfigError("tau_step must be > 0");
  if (cfg.scan) {
    RunConfig probe = cfg;
    for (double v : cfg.scan->values) {
      set_scan_param(probe.params, cfg.scan->param, v);
      auto w = validate_params(probe.params, probe.allow_negative_chi);
      warnings.insert(warnings.end(), w.begin(), w.end());
    }
  }
  return warnings;
}

namespace {

std::vector<double> make_omega_grid(const RunConfig& cfg, const Params& p) {
  const std::vector<double> dflt = default_omega_grid(p);
  const double lo = cfg.grids.omega_min.value_or(dflt.front());
  const double hi = cfg.grids.omega_max.value_or(dflt.back());
  const int n = cfg.grids.omega_points.value_or(static_cast<int>(dflt.size()));
  if (!(lo < hi)) throw ConfigError("frequency window is empty");
  std::vector<double> grid(n);
  for (int i = 0; i < n; ++i) grid[i] = lo + (hi - lo) * i / (n - 1);
  return grid;
}

struct TauGridInfo {
  std::vector<double> grid;
  double decay_tail;  // e^{-Gamma_min * tau_max}
};

TauGridInfo make_tau_grid(const RunConfig& cfg, const Params& p,
                          std::span<const double> omega_grid) {
  TauGridInfo info;
  const SpectralParams sp = spectral_params(p);
  const double gamma_min = std::min(sp.gamma_1, sp.gamma_2);
  if (!cfg.grids.tau_max && !cfg.grids.tau_step) {
    info.grid = default_tau_grid(p, omega_grid);
  } else {
    std::vector<double> dflt = default_tau_grid(p, omega_grid);
    const double t_max = cfg.grids.tau_max.value_or(dflt.back());
    const double dt = cfg.grids.tau_step.value_or(dflt[1] - dflt[0]);
    auto n = static_cast<std::size_t>(std::ceil(t_max / dt)) + 1;
    if (n < 2) throw ConfigError("time grid has fewer than 2 points");
    if (n > 4'000'001) throw ConfigError("time grid exceeds 4e6 points; coarsen tau_step");
    info.grid.resize(n);
    for (std::size_t i = 0; i < n; ++i) info.grid[i] = dt * static_cast<double>(i);
  }
  info.decay_tail = gamma_min > 0 ? std::exp(-gamma_min * info.grid.back()) : 1.0;
  return info;
}

struct SpectrumOutput {
  Spectrum spectrum;
  PeakSet peaks;
  double decay_tail = 0.0;
  bool used_correlation = false;
  double tau_max = 0.0, tau_step = 0.0;
  std::size_t tau_points = 0;
};

SpectrumOutput compute_spectrum(const RunConfig& cfg, const Params& p, Pipeline pipeline,
                                std::span<const double> omega_grid) {
  SpectrumOutput out;
  if (pipeline == Pipeline::Analytic) {
    out.spectrum = analytic_spectrum(p, omega_grid);
  } else {
    const TauGridInfo tg = make_tau_grid(cfg, p, omega_grid);
    const CorrelationSeries corr = emf_correlation(p, tg.grid);
    out.spectrum = half_line_fourier(corr, omega_grid);
    out.decay_tail = tg.decay_tail;
    out.used_correlation = true;
    out.tau_max = tg.grid.back();
    out.tau_step = tg.grid[1] - tg.grid[0];
    out.tau_points = tg.grid.size();
  }
  out.peaks = find_peaks(out.spectrum);
  return out;
}

void header_common(std::ostream& os, const RunConfig& cfg, const Params& p) {
  const Detunings d = detunings(p);
  os << "# nmqed " << kVersion << "\n";
  os << "# mode = " << mode_name(cfg.mode) << "\n";
  os << "# pipeline = " << (cfg.pipeline == Pipeline::Numeric ? "numeric" : "analytic") << "\n";
  os << "# omega_a = " << fmt17(p.omega_a) << "\n";
  os << "# omega_c = " << fmt17(p.omega_c) << "\n";
  os << "# omega_p = " << fmt17(p.omega_p) << "\n";
  os << "# delta_a = " << fmt17(d.delta_a) << "\n";
  os << "# delta_c = " << fmt17(d.delta_c) << "\n";
  os << "# delta = " << fmt17(d.delta) << "\n";
  os << "# g = " << fmt17(p.g) << "\n";
  os << "# xi = " << fmt17(p.xi) << "\n";
  os << "# chi = " << fmt17(p.chi) << "\n";
  os << "# kappa = " << fmt17(p.kappa) << "\n";
  os << "# gamma = " << fmt17(p.gamma) << "\n";
  os << "# n_fock = " << p.n_fock << "\n";
}

void header_grids(std::ostream& os, std::span<const double> omega,
                  const std::vector<double>* tau) {
  os << "# omega_min = " << fmt17(omega.front()) << "\n";
  os << "# omega_max = " << fmt17(omega.back()) << "\n";
  os << "# omega_points = " << omega.size() << "\n";
  if (tau) {
    os << "# tau_max = " << fmt17(tau->back()) << "\n";
    os << "# tau_step = " << fmt17((*tau)[1] - (*tau)[0]) << "\n";
    os << "# tau_points = " << tau->size() << "\n";
  }
}

void header_peaks(std::ostream& os, const PeakSet& pk) {
  os << "# peaks = " << pk.peaks.size() << "\n";
  for (std::size_t i = 0; i < pk.peaks.size(); ++i) {
    const Peak& q = pk.peaks[i];
    os << "# peak_" << i + 1 << "_center = " << fmt17(q.center) << "\n";
    os << "# peak_" << i + 1 << "_height = " << fmt17(q.height) << "\n";
    os << "# peak_" << i + 1 << "_half_width = " << fmt17(q.half_width) << "\n";
  }
  if (pk.splitting) os << "# splitting = " << fmt17(*pk.splitting) << "\n";
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot open output file '" + path + "'");
  out << contents;
  if (!out) throw ConfigError("failed writing output file '" + path + "'");
}

std::string spectrum_csv(const RunConfig& cfg, const Params& p, const SpectrumOutput& so,
                         const std::vector<double>* tau) {
  std::ostringstream os;
  header_common(os, cfg, p);
  header_grids(os, so.spectrum.omega, tau);
  if (so.used_correlation) {
    if (!tau) {
      os << "# tau_max = " << fmt17(so.tau_max) << "\n";
      os << "# tau_step = " << fmt17(so.tau_step) << "\n";
      os << "# tau_points = " << so.tau_points << "\n";
    }
    os << "# decay_tail = " << fmt17(so.decay_tail) << "\n";
    os << "# tail_bound = " << fmt17(so.spectrum.tail_bound) << "\n";
  }
  header_peaks(os, so.peaks);
  os << "omega,s_v\n";
  for (std::size_t i = 0; i < so.spectrum.omega.size(); ++i)
    os << fmt17(so.spectrum.omega[i]) << "," << fmt17(so.spectrum.values[i]) << "\n";
  return os.str();
}

std::string peaks_block(const PeakSet& pk) {
  std::ostringstream os;
  os << "peaks: " << pk.peaks.size() << "\n";
  for (std::size_t i = 0; i < pk.peaks.size(); ++i) {
    const Peak& q = pk.peaks[i];
    os << "peak " << i + 1 << ": center = " << fmt17(q.center)
       << ", height = " << fmt17(q.height) << ", half_width = " << fmt17(q.half_width) << "\n";
  }
  if (pk.splitting) os << "splitting: " << fmt17(*pk.splitting) << "\n";
  return os.str();
}

std::string scan_value_path(const std::string& out, const std::string& param, double value) {
  const std::filesystem::path base(out);
  std::filesystem::path p = base.parent_path();
  const std::string stem = base.stem().string();
  const std::string ext = base.extension().string();
  p /= stem + "_" + param + "_" + fmt_short(value) + (ext.empty() ? ".csv" : ext);
  return p.string();
}

void check_decay_tail(double decay_tail, const Spectrum& s, RunResult& result) {
  if (decay_tail >= 1e-6)
    result.diagnostics.push_back(
        "decay-tail criterion unmet: e^{-Gamma_min tau_max} = " + fmt17(decay_tail) +
        " >= 1e-6; extend tau_max");
  if (!s.tail_ok)
    result.diagnostics.push_back("correlation not decayed at tau_max: tail fraction " +
                                 fmt17(s.tail_bound) + " >= 1e-6");
}

}  // namespace

RunResult run(const RunConfig& cfg) {
  RunResult result;
  result.warnings = validate_config(cfg);

  switch (cfg.mode) {
    case Mode::SpectrumAnalytic: {
      const auto omega = make_omega_grid(cfg, cfg.params);
      RunConfig eff = cfg;
      eff.pipeline = Pipeline::Analytic;
      const SpectrumOutput so = compute_spectrum(eff, cfg.params, Pipeline::Analytic, omega);
      write_file(cfg.out, spectrum_csv(eff, cfg.params, so, nullptr));
      result.files.push_back(cfg.out);
      result.summary = "wrote " + cfg.out + "\n" + peaks_block(so.peaks);
      break;
    }
    case Mode::SpectrumNumeric: {
      const auto omega = make_omega_grid(cfg, cfg.params);
      const TauGridInfo tg = make_tau_grid(cfg, cfg.params, omega);
      const CorrelationSeries corr = emf_correlation(cfg.params, tg.grid);
      SpectrumOutput so;
      so.spectrum = half_line_fourier(corr, omega);
      so.peaks = find_peaks(so.spectrum);
      so.decay_tail = tg.decay_tail;
      so.used_correlation = true;
      RunConfig eff = cfg;
      eff.pipeline = Pipeline::Numeric;
      write_file(cfg.out, spectrum_csv(eff, cfg.params, so, &tg.grid));
      result.files.push_back(cfg.out);
      check_decay_tail(tg.decay_tail, so.spectrum, result);
      result.summary = "wrote " + cfg.out + "\n" + peaks_block(so.peaks);
      break;
    }
    case Mode::Correlation: {
      const auto omega = make_omega_grid(cfg, cfg.params);
      const TauGridInfo tg = make_tau_grid(cfg, cfg.params, omega);
      const CorrelationSeries corr = emf_correlation(cfg.params, tg.grid);
      std::ostringstream os;
      header_common(os, cfg, cfg.params);
      os << "# tau_max = " << fmt17(tg.grid.back()) << "\n";
      os << "# tau_step = " << fmt17(tg.grid[1] - tg.grid[0]) << "\n";
      os << "# tau_points = " << tg.grid.size() << "\n";
      os << "# decay_tail = " << fmt17(tg.decay_tail) << "\n";
      os << "tau,re,im\n";
      for (std::size_t i = 0; i < corr.tau.size(); ++i)
        os << fmt17(corr.tau[i]) << "," << fmt17(corr.values[i].real()) << ","
           << fmt17(corr.values[i].imag()) << "\n";
      write_file(cfg.out, os.str());
      result.files.push_back(cfg.out);
      if (tg.decay_tail >= 1e-6)
        result.diagnostics.push_back(
            "decay-tail criterion unmet: e^{-Gamma_min tau_max} = " + fmt17(tg.decay_tail) +
            " >= 1e-6; extend tau_max");
      result.summary = "wrote " + cfg.out;
      break;
    }
    case Mode::Peaks: {
      const auto omega = make_omega_grid(cfg, cfg.params);
      const SpectrumOutput so = compute_spectrum(cfg, cfg.params, cfg.pipeline, omega);
      std::ostringstream os;
      header_common(os, cfg, cfg.params);
      header_grids(os, omega, nullptr);
      if (so.peaks.splitting) os << "# splitting = " << fmt17(*so.peaks.splitting) << "\n";
      os << "center,height,half_width\n";
      for (const Peak& q : so.peaks.peaks)
        os << fmt17(q.center) << "," << fmt17(q.height) << "," << fmt17(q.half_width) << "\n";
      write_file(cfg.out, os.str());
      result.files.push_back(cfg.out);
      if (so.used_correlation) check_decay_tail(so.decay_tail, so.spectrum, result);
      result.summary = peaks_block(so.peaks) + "wrote " + cfg.out;
      break;
    }
    case Mode::Scan: {
      const ScanSpec& scan = *cfg.scan;
      const std::size_t nv = scan.values.size();
      {
        std::vector<std::string> names;
        for (double v : scan.values) names.push_back(scan_value_path(cfg.out, scan.param, v));
        std::sort(names.begin(), names.end());
        if (std::adjacent_find(names.begin(), names.end()) != names.end())
          throw ConfigError("scan values too close together to name distinct output files");
      }
      struct Point {
        Params params;
        std::vector<double> omega;
        SpectrumOutput so;
        std::exception_ptr error;
      };
      std::vector<Point> points(nv);
      std::atomic<std::size_t> next{0};
      const int nthreads = std::min<int>(cfg.workers, static_cast<int>(nv));
      auto work = [&]() {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= nv) return;
          try {
            Point& pt = points[i];
            pt.params = cfg.params;
            set_scan_param(pt.params, scan.param, scan.values[i]);
            pt.omega = make_omega_grid(cfg, pt.params);
            pt.so = compute_spectrum(cfg, pt.params, cfg.pipeline, pt.omega);
          } catch (...) {
            points[i].error = std::current_exception();
          }
        }
      };
      if (nthreads <= 1) {
        work();
      } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
      }
      for (const Point& pt : points)
        if (pt.error) std::rethrow_exception(pt.error);

      std::ostringstream sum;
      header_common(sum, cfg, cfg.params);
      sum << "# scan = " << scan_to_string(scan) << "\n";
      sum << scan.param
          << ",peaks,peak_1_center,peak_1_height,peak_1_half_width,peak_2_center,peak_2_height,"
             "peak_2_half_width,splitting\n";
      std::ostringstream report;
      for (std::size_t i = 0; i < nv; ++i) {
        const Point& pt = points[i];
        RunConfig eff = cfg;
        const std::string path = scan_value_path(cfg.out, scan.param, scan.values[i]);
        write_file(path, spectrum_csv(eff, pt.params, pt.so, nullptr));
        result.files.push_back(path);
        if (pt.so.used_correlation) check_decay_tail(pt.so.decay_tail, pt.so.spectrum, result);

        sum << fmt17(scan.values[i]) << "," << pt.so.peaks.peaks.size();
        for (std::size_t k = 0; k < 2; ++k) {
          if (k < pt.so.peaks.peaks.size()) {
            const Peak& q = pt.so.peaks.peaks[k];
            sum << "," << fmt17(q.center) << "," << fmt17(q.height) << ","
                << fmt17(q.half_width);
          } else {
            sum << ",,,";
          }
        }
        sum << "," << (pt.so.peaks.splitting ? fmt17(*pt.so.peaks.splitting) : "") << "\n";
        report << scan.param << " = " << fmt17(scan.values[i]) << ": "
               << pt.so.peaks.peaks.size() << " peaks"
               << (pt.so.peaks.splitting
                       ? ", splitting = " + fmt17(*pt.so.peaks.splitting)
                       : "")
               << " -> " << path << "\n";
      }
      write_file(cfg.out, sum.str());
      result.files.push_back(cfg.out);
      result.summary = report.str() + "wrote " + cfg.out;
      break;
    }
  }

  if (!result.diagnostics.empty()) result.status = Status::NumericsError;
  return result;
}

}  // namespace nmqed
