#pragma once

#include <complex>
#include <span>
#include <vector>

#include "model.hpp"

namespace nmqed {

// Closed-form description of the two-peak correlation spectrum in the weak
// driving limit. Identities that hold by construction:
//   gamma_1 + gamma_2 = gamma/2 + kappa
//   omega_1 - omega_2 = 2 Re G
struct SpectralParams {
  std::complex<double> big_g;
  double gamma_1, gamma_2;  // peak decay rates
  double omega_1, omega_2;  // peak center frequencies (rotating frame)
};

// G = sqrt(g^2 - 1/4 [i(delta + 2 chi) + (gamma/2 - kappa)]^2), principal
// branch (Re G >= 0; if Re G = 0, Im G >= 0), making omega_1 >= omega_2.
std::complex<double> big_g(const Params& p);

// Gamma_n = (gamma/2 + kappa)/2 + (-1)^n Im G
// omega_n = (-1)^(n+1) Re G - Delta_a/2 - (Delta_c + 2 chi)/2
SpectralParams spectral_params(const Params& p);

struct MuNuC {
  std::complex<double> mu, nu, c;
};

// Time-dependent coefficients of the first-order coherence solution
//   rho_{00,01}(tau) = mu rho_{00,01}^ss + nu rho_{00,10}^ss - i xi C(tau).
// mu(0) = 1, nu(0) = 0, C(0) = 0. Requires |G| > 1e-12 (the forms carry 1/G).
MuNuC mu_nu_c(const Params& p, double tau);

struct SteadyElements {
  std::complex<double> rho_00_01;  // <0,0| rho_ss |0,1>
  std::complex<double> rho_00_10;  // <0,0| rho_ss |1,0>
};

// First-order steady coherences:
//   rho_{00,01}^ss = xi / [(Delta_c + 2 chi) + i kappa - g^2/(Delta_a + i gamma/2)]
//   rho_{00,10}^ss = -g rho_{00,01}^ss / (Delta_a + i gamma/2)
SteadyElements steady_elements(const Params& p);

struct Spectrum;  // spectrum.hpp

// Two-Lorentzian closed form,
//   S_V(omega) = (1/pi) sum_n Re eta_n(omega) / ((omega - omega_n)^2 + Gamma_n^2),
//   eta_n(omega) = [Gamma_n - i omega_n + (-i Delta_a - gamma/2)] / ((-1)^n 2i G*)
//                  * [Gamma_n - i(omega - omega_n)].
// Same arbitrary-unit normalization as the half-line transform of the
// correlation, so the two pipelines agree up to a constant near 1.
// Independent of xi by construction.
Spectrum analytic_spectrum(const Params& p, std::span<const double> omega_grid);

// Peak separation |omega_1 - omega_2| = 2 Re G.
double splitting(const Params& p);

// Numerical integration of the first-order coherence system
//   d/dtau rho_{00,01} = [i(Delta_c + 2 chi) - kappa] rho_{00,01} + i g rho_{00,10} - i xi
//   d/dtau rho_{00,10} = (i Delta_a - gamma/2) rho_{00,10} + i g rho_{00,01}
// (rho_{00,00} frozen at 1) from the steady-element initial conditions; the
// in-repo cross-check of the closed forms above.
struct FirstOrderSolution {
  std::vector<double> tau;
  std::vector<std::complex<double>> rho_00_01;
  std::vector<std::complex<double>> rho_00_10;
};

FirstOrderSolution solve_first_order(const Params& p, std::span<const double> tau_grid);

// Coefficient matrix of the first-order system, exposed so oracles can
// integrate the same generator from arbitrary initial conditions.
Eigen::Matrix2cd first_order_matrix(const Params& p);

}  // namespace nmqed
