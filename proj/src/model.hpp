#pragma once

#include <string>
#include <vector>

#include "operators.hpp"

namespace nmqed {

// All model parameters. Rates and frequencies are angular GHz (rad/ns) with
// hbar = 1; time is ns. Defaults are the resonant working point
// Delta_a = Delta_c = 1 expressed with omega_p = 0.
struct Params {
  double omega_a = 1.0;   // qubit frequency
  double omega_c = 1.0;   // resonator frequency
  double omega_p = 0.0;   // drive frequency
  double g = 0.2;         // qubit-resonator coupling
  double xi = 0.02;       // drive strength
  double chi = 0.01;      // resonator nonlinearity
  double kappa = 0.004;   // resonator decay rate
  double gamma = 0.004;   // qubit decay rate
  int n_fock = 10;        // Fock truncation

  bool operator==(const Params&) const = default;
};

struct Detunings {
  double delta_a;  // omega_a - omega_p
  double delta_c;  // omega_c - omega_p
  double delta;    // delta_c - delta_a
};

Detunings detunings(const Params& p);

// Constraint checks used at the config boundary; core math functions accept
// any values. Throws ConfigError on violation, returns advisory warnings
// (currently: chi > g/5 leaves the small-nonlinearity regime).
std::vector<std::string> validate_params(const Params& p, bool allow_negative_chi = false);

// Rotating-frame Hamiltonian:
//   H = Delta_a s+s- + g(a s+ + a^dag s-) + Delta_c a^dag a
//       - xi (a + a^dag) + chi a^dag a + chi (a^dag a)^2
Operator hamiltonian_rotating(const Params& p);

// Lab-frame Hamiltonian at time t (ns):
//   H = omega_a s+s- + g(a s+ + a^dag s-) + omega_c a^dag a
//       - xi sin(omega_p t)(a + a^dag)
Operator hamiltonian_lab(const Params& p, double t);

}  // namespace nmqed
