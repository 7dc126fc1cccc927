#include "model.hpp"

#include <cmath>

#include "errors.hpp"

namespace nmqed {

Detunings detunings(const Params& p) {
  Detunings d;
  d.delta_a = p.omega_a - p.omega_p;
  d.delta_c = p.omega_c - p.omega_p;
  d.delta = d.delta_c - d.delta_a;
  return d;
}

std::vector<std::string> validate_params(const Params& p, bool allow_negative_chi) {
  auto bad = [](const std::string& m) { return ConfigError("invalid parameters: " + m); };
  if (!(p.g > 0)) throw bad("g must be > 0");
  if (!(p.kappa > 0)) throw bad("kappa must be > 0");
  if (!(p.gamma > 0)) throw bad("gamma must be > 0");
  if (p.n_fock < 1) throw bad("n_fock must be >= 1");
  if (!(p.xi >= 0)) throw bad("xi must be >= 0");
  if (p.chi < 0 && !allow_negative_chi)
    throw bad("chi must be >= 0 (pass the sign-constraint override to explore chi < 0)");
  std::vector<std::string> warnings;
  if (p.chi > p.g / 5)
    warnings.push_back("chi = " + std::to_string(p.chi) + " exceeds g/5 = " +
                       std::to_string(p.g / 5) + "; results leave the small-nonlinearity regime");
  return warnings;
}

Operator hamiltonian_rotating(const Params& p) {
  const HilbertConfig cfg(p.n_fock);
  const Detunings d = detunings(p);
  const Operator a = lift_resonator(annihilation(p.n_fock), cfg);
  const Operator ad = a.adjoint();
  const Operator sm = lift_qubit(sigma_minus(), cfg);
  const Operator sp = sm.adjoint();
  const Operator n = lift_resonator(fock_number(p.n_fock), cfg);
  return d.delta_a * (sp * sm) + p.g * (a * sp + ad * sm) + d.delta_c * n - p.xi * (a + ad) +
         p.chi * n + p.chi * (n * n);
}

Operator hamiltonian_lab(const Params& p, double t) {
  const HilbertConfig cfg(p.n_fock);
  const Operator a = lift_resonator(annihilation(p.n_fock), cfg);
  const Operator ad = a.adjoint();
  const Operator sm = lift_qubit(sigma_minus(), cfg);
  const Operator sp = sm.adjoint();
  return p.omega_a * (sp * sm) + p.g * (a * sp + ad * sm) +
         p.omega_c * lift_resonator(fock_number(p.n_fock), cfg) -
         p.xi * std::sin(p.omega_p * t) * (a + ad);
}

}  // namespace nmqed
