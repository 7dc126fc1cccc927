// Command-line front end; talks to the simulator only through the C API.

#include <CLI11.hpp>
#include <cstdio>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "nmqed/nmqed.h"

namespace {

struct ConfigDeleter {
  void operator()(nmqed_config* c) const { nmqed_config_free(c); }
};
using ConfigPtr = std::unique_ptr<nmqed_config, ConfigDeleter>;

int fail(int status, const std::string& context) {
  std::fprintf(stderr, "nmqed: %s: %s\n", context.c_str(), nmqed_last_error());
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vacuum-Rabi-splitting correlation spectra of a driven qubit"
               " coupled to a nonlinear nanomechanical resonator"};
  app.set_version_flag("--version", std::string(nmqed_version()));

  std::string config_path;
  app.add_option("-c,--config", config_path, "flat key = value config file (# comments)");

  // every option below mirrors a config key; flags win over file values
  std::vector<std::pair<std::string, std::string>> overrides;
  auto add_kv = [&](const std::string& flag, const std::string& key, const std::string& help) {
    app.add_option_function<std::string>(
        flag, [&overrides, key](const std::string& v) { overrides.emplace_back(key, v); }, help);
  };
  add_kv("--mode", "mode", "spectrum-numeric|spectrum-analytic|correlation|peaks|scan");
  add_kv("--pipeline", "pipeline", "numeric|analytic (peaks and scan modes)");
  add_kv("-o,--out", "out", "output CSV path");
  add_kv("--workers", "workers", "concurrent scan evaluations");
  add_kv("--scan", "scan", "<param>=<v1,v2,...>");
  add_kv("--delta-a", "delta_a", "qubit detuning (GHz)");
  add_kv("--delta-c", "delta_c", "resonator detuning (GHz)");
  add_kv("--omega-a", "omega_a", "qubit frequency (GHz, lab frame)");
  add_kv("--omega-c", "omega_c", "resonator frequency (GHz, lab frame)");
  add_kv("--omega-p", "omega_p", "drive frequency (GHz, lab frame)");
  add_kv("--g", "g", "qubit-resonator coupling (GHz)");
  add_kv("--xi", "xi", "drive strength (GHz)");
  add_kv("--chi", "chi", "resonator nonlinearity (GHz)");
  add_kv("--kappa", "kappa", "resonator decay rate (GHz)");
  add_kv("--gamma", "gamma", "qubit decay rate (GHz)");
  add_kv("--n-fock", "n_fock", "Fock truncation");
  add_kv("--omega-min", "omega_min", "frequency window lower edge (GHz)");
  add_kv("--omega-max", "omega_max", "frequency window upper edge (GHz)");
  add_kv("--omega-points", "omega_points", "frequency samples");
  add_kv("--tau-max", "tau_max", "correlation horizon (ns)");
  add_kv("--tau-step", "tau_step", "correlation sampling step (ns)");

  bool override_signs = false;
  app.add_flag("--override-sign-constraints", override_signs,
               "permit chi < 0 (rejected by default)");
  bool print_config = false;
  app.add_flag("--print-config", print_config, "print the effective config and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : NMQED_ERROR_CONFIG;
  }

  ConfigPtr cfg(nmqed_config_create());
  if (!cfg) {
    std::fprintf(stderr, "nmqed: out of memory\n");
    return NMQED_ERROR_NUMERICS;
  }

  if (!config_path.empty()) {
    if (int rc = nmqed_config_parse_file(cfg.get(), config_path.c_str()); rc != NMQED_OK)
      return fail(rc, config_path);
  }
  for (const auto& [key, value] : overrides) {
    if (int rc = nmqed_config_set(cfg.get(), key.c_str(), value.c_str()); rc != NMQED_OK)
      return fail(rc, "--" + key);
  }
  if (override_signs) {
    if (int rc = nmqed_config_set(cfg.get(), "allow_negative_chi", "true"); rc != NMQED_OK)
      return fail(rc, "--override-sign-constraints");
  }

  std::string warnings(4096, '\0');
  if (int rc = nmqed_config_validate(cfg.get(), warnings.data(), warnings.size());
      rc != NMQED_OK)
    return fail(rc, "config");
  warnings.resize(warnings.find('\0'));
  if (!warnings.empty()) std::fprintf(stderr, "%s", ("warning: " + warnings).c_str());

  if (print_config) {
    size_t needed = 0;
    nmqed_config_serialize(cfg.get(), nullptr, 0, &needed);
    std::string text(needed + 1, '\0');
    nmqed_config_serialize(cfg.get(), text.data(), text.size(), nullptr);
    text.resize(needed);
    std::fputs(text.c_str(), stdout);
    return NMQED_OK;
  }

  std::string summary(1 << 16, '\0');
  const int rc = nmqed_run(cfg.get(), summary.data(), summary.size());
  summary.resize(summary.find('\0'));
  if (rc == NMQED_OK || rc == NMQED_ERROR_NUMERICS) {
    std::fputs(summary.c_str(), stdout);
    if (rc != NMQED_OK) std::fprintf(stderr, "nmqed: %s\n", nmqed_last_error());
    return rc;
  }
  return fail(rc, "run");
}
