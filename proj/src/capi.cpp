#include "nmqed/nmqed.h"

#include <cmath>
#include <cstring>
#include <new>
#include <string>

#include "analytic.hpp"
#include "correlation.hpp"
#include "runner.hpp"
#include "spectrum.hpp"
#include "version.hpp"

using namespace nmqed;

struct nmqed_config {
  RunConfig cfg;
};

namespace {

thread_local std::string t_last_error;

void put_string(const std::string& s, char* buf, size_t cap, size_t* needed) {
  if (needed) *needed = s.size();
  if (!buf || cap == 0) return;
  const size_t n = std::min(cap - 1, s.size());
  std::memcpy(buf, s.data(), n);
  buf[n] = '\0';
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    return static_cast<int>(fn());
  } catch (const Error& e) {
    t_last_error = e.what();
    return static_cast<int>(e.status());
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return static_cast<int>(Status::NumericsError);
  } catch (...) {
    t_last_error = "unknown error";
    return static_cast<int>(Status::NumericsError);
  }
}

int arg_error(const char* what) {
  t_last_error = what;
  return NMQED_ERROR_CONFIG;
}

std::vector<double> copy_grid(const double* data, size_t n) {
  return std::vector<double>(data, data + n);
}

}  // namespace

extern "C" {

nmqed_config* nmqed_config_create(void) { return new (std::nothrow) nmqed_config(); }

void nmqed_config_free(nmqed_config* cfg) { delete cfg; }

int nmqed_config_parse_text(nmqed_config* cfg, const char* text) {
  if (!cfg || !text) return arg_error("null argument");
  return guarded([&] {
    cfg->cfg = parse_config_text(text);
    return Status::Ok;
  });
}

int nmqed_config_parse_file(nmqed_config* cfg, const char* path) {
  if (!cfg || !path) return arg_error("null argument");
  return guarded([&] {
    cfg->cfg = parse_config_file(path);
    return Status::Ok;
  });
}

int nmqed_config_set(nmqed_config* cfg, const char* key, const char* value) {
  if (!cfg || !key || !value) return arg_error("null argument");
  return guarded([&] {
    apply_key(cfg->cfg, key, value);
    return Status::Ok;
  });
}

int nmqed_config_serialize(const nmqed_config* cfg, char* buf, size_t cap, size_t* needed) {
  if (!cfg) return arg_error("null argument");
  return guarded([&] {
    put_string(serialize_config(cfg->cfg), buf, cap, needed);
    return Status::Ok;
  });
}

int nmqed_config_validate(const nmqed_config* cfg, char* warnings, size_t cap) {
  if (!cfg) return arg_error("null argument");
  return guarded([&] {
    const auto w = validate_config(cfg->cfg);
    std::string joined;
    for (const auto& s : w) {
      joined += s;
      joined += '\n';
    }
    put_string(joined, warnings, cap, nullptr);
    return Status::Ok;
  });
}

int nmqed_run(const nmqed_config* cfg, char* summary, size_t cap) {
  if (!cfg) return arg_error("null argument");
  return guarded([&] {
    const RunResult r = nmqed::run(cfg->cfg);
    std::string text = r.summary;
    if (!text.empty() && text.back() != '\n') text += '\n';
    for (const auto& d : r.diagnostics) text += "diagnostic: " + d + "\n";
    put_string(text, summary, cap, nullptr);
    if (r.status != Status::Ok) t_last_error = "run completed with numerical diagnostics";
    return r.status;
  });
}

int nmqed_splitting(const nmqed_config* cfg, double* out) {
  if (!cfg || !out) return arg_error("null argument");
  return guarded([&] {
    validate_config(cfg->cfg);
    *out = splitting(cfg->cfg.params);
    return Status::Ok;
  });
}

int nmqed_spectral_params(const nmqed_config* cfg, double out[6]) {
  if (!cfg || !out) return arg_error("null argument");
  return guarded([&] {
    validate_config(cfg->cfg);
    const SpectralParams sp = spectral_params(cfg->cfg.params);
    out[0] = sp.big_g.real();
    out[1] = sp.big_g.imag();
    out[2] = sp.gamma_1;
    out[3] = sp.gamma_2;
    out[4] = sp.omega_1;
    out[5] = sp.omega_2;
    return Status::Ok;
  });
}

int nmqed_steady_elements(const nmqed_config* cfg, double out[4]) {
  if (!cfg || !out) return arg_error("null argument");
  return guarded([&] {
    validate_config(cfg->cfg);
    const SteadyElements se = steady_elements(cfg->cfg.params);
    out[0] = se.rho_00_01.real();
    out[1] = se.rho_00_01.imag();
    out[2] = se.rho_00_10.real();
    out[3] = se.rho_00_10.imag();
    return Status::Ok;
  });
}

int nmqed_analytic_spectrum(const nmqed_config* cfg, const double* omega, size_t n, double* s) {
  if (!cfg || !omega || !s || n == 0) return arg_error("null or empty argument");
  return guarded([&] {
    validate_config(cfg->cfg);
    const Spectrum spec = analytic_spectrum(cfg->cfg.params, copy_grid(omega, n));
    std::memcpy(s, spec.values.data(), n * sizeof(double));
    return Status::Ok;
  });
}

int nmqed_numeric_spectrum(const nmqed_config* cfg, const double* omega, size_t n, double* s) {
  if (!cfg || !omega || !s || n == 0) return arg_error("null or empty argument");
  return guarded([&] {
    validate_config(cfg->cfg);
    const std::vector<double> ogrid = copy_grid(omega, n);
    std::vector<double> tau = default_tau_grid(cfg->cfg.params, ogrid);
    if (cfg->cfg.grids.tau_max || cfg->cfg.grids.tau_step) {
      const double t_max = cfg->cfg.grids.tau_max.value_or(tau.back());
      const double dt = cfg->cfg.grids.tau_step.value_or(tau[1] - tau[0]);
      const auto m = static_cast<size_t>(std::ceil(t_max / dt)) + 1;
      if (m < 2 || m > 4'000'001) throw ConfigError("time grid size out of range");
      tau.resize(m);
      for (size_t i = 0; i < m; ++i) tau[i] = dt * static_cast<double>(i);
    }
    const CorrelationSeries corr = emf_correlation(cfg->cfg.params, tau);
    const Spectrum spec = half_line_fourier(corr, ogrid);
    std::memcpy(s, spec.values.data(), n * sizeof(double));
    return Status::Ok;
  });
}

int nmqed_emf_correlation(const nmqed_config* cfg, const double* tau, size_t n, double* re,
                          double* im) {
  if (!cfg || !tau || !re || !im || n == 0) return arg_error("null or empty argument");
  return guarded([&] {
    validate_config(cfg->cfg);
    const CorrelationSeries corr = emf_correlation(cfg->cfg.params, copy_grid(tau, n));
    for (size_t i = 0; i < n; ++i) {
      re[i] = corr.values[i].real();
      im[i] = corr.values[i].imag();
    }
    return Status::Ok;
  });
}

const char* nmqed_last_error(void) { return t_last_error.c_str(); }

const char* nmqed_version(void) { return kVersion; }

}  // extern "C"
