#pragma once

#include <complex>
#include <span>
#include <vector>

#include "dynamics.hpp"

namespace nmqed {

struct CorrelationSeries {
  std::vector<double> tau;
  std::vector<std::complex<double>> values;
};

// Quantum regression: <A(tau) B(0)> = Tr{ A unvec(e^{L tau} vec(B rho_ss)) }.
// The evolved argument is generally not a density matrix, so no state
// invariants are enforced along this path.
CorrelationSeries two_time(const Evolver& ev, const DensityMatrix& rho_ss, const Operator& a,
                           const Operator& b, std::span<const double> tau_grid);

// Correlation of V = i(a^dag - a) (overall prefactor fixed to 1):
//   <V(tau)V(0)> = <a^dag(tau)a(0)> + <a(tau)a^dag(0)>
//                - <a(tau)a(0)> - <a^dag(tau)a^dag(0)>,
// all four terms by regression against the numerically obtained steady state.
CorrelationSeries emf_correlation(const Params& p, std::span<const double> tau_grid);

// Same, reusing an existing factorization and steady state (parameter scans).
CorrelationSeries emf_correlation(const Evolver& ev, const DensityMatrix& rho_ss,
                                  const Params& p, std::span<const double> tau_grid);

}  // namespace nmqed
