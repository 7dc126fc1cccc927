#include "analytic.hpp"

#include <cmath>

#include "errors.hpp"
#include "numerics.hpp"
#include "spectrum.hpp"

namespace nmqed {

using std::complex;

namespace {
constexpr complex<double> kI{0.0, 1.0};

void require_nondegenerate(const complex<double>& g_val) {
  if (std::abs(g_val) <= 1e-12)
    throw DegenerateError("critical coupling: |G| <= 1e-12, closed forms are 0/0");
}
}  // namespace

complex<double> big_g(const Params& p) {
  const Detunings d = detunings(p);
  const complex<double> bracket = kI * (d.delta + 2.0 * p.chi) + (0.5 * p.gamma - p.kappa);
  complex<double> radicand = p.g * p.g - 0.25 * bracket * bracket;
  // keep sqrt on the principal branch when the radicand sits on the negative
  // real axis with a -0.0 imaginary part
  if (radicand.imag() == 0.0) radicand = complex<double>(radicand.real(), 0.0);
  return std::sqrt(radicand);
}

SpectralParams spectral_params(const Params& p) {
  const Detunings d = detunings(p);
  const complex<double> g_val = big_g(p);
  const double half_sum = 0.5 * (0.5 * p.gamma + p.kappa);
  const double offset = -0.5 * d.delta_a - 0.5 * (d.delta_c + 2.0 * p.chi);
  SpectralParams sp;
  sp.big_g = g_val;
  sp.gamma_1 = half_sum - g_val.imag();
  sp.gamma_2 = half_sum + g_val.imag();
  sp.omega_1 = g_val.real() + offset;
  sp.omega_2 = -g_val.real() + offset;
  return sp;
}

MuNuC mu_nu_c(const Params& p, double tau) {
  const Detunings d = detunings(p);
  const SpectralParams sp = spectral_params(p);
  require_nondegenerate(sp.big_g);
  const complex<double> l1 = sp.gamma_1 + kI * sp.omega_1;
  const complex<double> l2 = sp.gamma_2 + kI * sp.omega_2;
  const complex<double> qubit_pole = kI * d.delta_a - 0.5 * p.gamma;
  const complex<double> e1 = std::exp(-l1 * tau);
  const complex<double> e2 = std::exp(-l2 * tau);
  const complex<double> two_ig = 2.0 * kI * sp.big_g;

  MuNuC out;
  out.mu = (l1 + qubit_pole) / two_ig * e1 - (l2 + qubit_pole) / two_ig * e2;
  out.nu = p.g / (-2.0 * sp.big_g) * e1 + p.g / (2.0 * sp.big_g) * e2;
  out.c = (l1 + qubit_pole) / (two_ig * l1) * (1.0 - e1) -
          (l2 + qubit_pole) / (two_ig * l2) * (1.0 - e2);
  return out;
}

SteadyElements steady_elements(const Params& p) {
  const Detunings d = detunings(p);
  const complex<double> qubit_den = d.delta_a + kI * (0.5 * p.gamma);
  if (std::abs(qubit_den) == 0.0)
    throw DegenerateError("parameter degeneracy: Delta_a + i gamma/2 = 0");
  const complex<double> den = (d.delta_c + 2.0 * p.chi) + kI * p.kappa - p.g * p.g / qubit_den;
  if (std::abs(den) == 0.0)
    throw DegenerateError("parameter degeneracy: steady-element denominator vanishes");
  SteadyElements out;
  out.rho_00_01 = p.xi / den;
  out.rho_00_10 = -p.g / qubit_den * out.rho_00_01;
  return out;
}

Spectrum analytic_spectrum(const Params& p, std::span<const double> omega_grid) {
  const Detunings d = detunings(p);
  const SpectralParams sp = spectral_params(p);
  require_nondegenerate(sp.big_g);
  const complex<double> g_conj = std::conj(sp.big_g);
  const complex<double> qubit_term = -kI * d.delta_a - 0.5 * p.gamma;

  Spectrum s;
  s.omega.assign(omega_grid.begin(), omega_grid.end());
  s.values.resize(s.omega.size());
  const double rates[2] = {sp.gamma_1, sp.gamma_2};
  const double centers[2] = {sp.omega_1, sp.omega_2};
  for (std::size_t i = 0; i < s.omega.size(); ++i) {
    const double w = s.omega[i];
    double acc = 0.0;
    for (int n = 1; n <= 2; ++n) {
      const double gn = rates[n - 1], wn = centers[n - 1];
      const double sign = (n == 1) ? -1.0 : 1.0;  // (-1)^n
      const complex<double> eta = (gn - kI * wn + qubit_term) / (sign * 2.0 * kI * g_conj) *
                                  (gn - kI * (w - wn));
      acc += eta.real() / ((w - wn) * (w - wn) + gn * gn);
    }
    s.values[i] = acc / M_PI;
  }
  return s;
}

double splitting(const Params& p) { return 2.0 * big_g(p).real(); }

Eigen::Matrix2cd first_order_matrix(const Params& p) {
  const Detunings d = detunings(p);
  Eigen::Matrix2cd m;
  m(0, 0) = kI * (d.delta_c + 2.0 * p.chi) - p.kappa;
  m(0, 1) = kI * p.g;
  m(1, 0) = kI * p.g;
  m(1, 1) = kI * d.delta_a - 0.5 * p.gamma;
  return m;
}

FirstOrderSolution solve_first_order(const Params& p, std::span<const double> tau_grid) {
  require_time_grid(tau_grid);
  const Eigen::Matrix2cd m = first_order_matrix(p);
  const SteadyElements ss = steady_elements(p);
  Eigen::VectorXcd y0(2);
  y0 << ss.rho_00_01, ss.rho_00_10;
  Eigen::Vector2cd drive(-kI * p.xi, 0.0);  // rho_{00,00} frozen at 1

  auto rhs = [&](double, const Eigen::VectorXcd& y) -> Eigen::VectorXcd {
    return m * y + drive;
  };
  OdeOptions opt;
  opt.rtol = 1e-12;
  opt.atol = 1e-14;
  auto states = integrate_ode(rhs, y0, tau_grid, opt);

  FirstOrderSolution out;
  out.tau.assign(tau_grid.begin(), tau_grid.end());
  out.rho_00_01.reserve(states.size());
  out.rho_00_10.reserve(states.size());
  for (const auto& y : states) {
    out.rho_00_01.push_back(y[0]);
    out.rho_00_10.push_back(y[1]);
  }
  return out;
}

}  // namespace nmqed
