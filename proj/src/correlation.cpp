#include "correlation.hpp"

namespace nmqed {

using Eigen::VectorXcd;

CorrelationSeries two_time(const Evolver& ev, const DensityMatrix& rho_ss, const Operator& a,
                           const Operator& b, std::span<const double> tau_grid) {
  const VectorXcd u = vec(a.transpose().eval());  // u^T x = Tr(A unvec(x))
  const VectorXcd x0 = vec((b * rho_ss.rho).eval());
  const VectorXcd samples = ev.scalar_series(u, x0, tau_grid);

  CorrelationSeries out;
  out.tau.assign(tau_grid.begin(), tau_grid.end());
  out.values.assign(samples.data(), samples.data() + samples.size());
  return out;
}

CorrelationSeries emf_correlation(const Evolver& ev, const DensityMatrix& rho_ss,
                                  const Params& p, std::span<const double> tau_grid) {
  const HilbertConfig cfg(p.n_fock);
  const Operator a = lift_resonator(annihilation(p.n_fock), cfg);
  const Operator ad = a.adjoint();

  CorrelationSeries out = two_time(ev, rho_ss, ad, a, tau_grid);
  const CorrelationSeries aad = two_time(ev, rho_ss, a, ad, tau_grid);
  const CorrelationSeries aa = two_time(ev, rho_ss, a, a, tau_grid);
  const CorrelationSeries adad = two_time(ev, rho_ss, ad, ad, tau_grid);
  for (std::size_t i = 0; i < out.values.size(); ++i)
    out.values[i] += aad.values[i] - aa.values[i] - adad.values[i];
  return out;
}

CorrelationSeries emf_correlation(const Params& p, std::span<const double> tau_grid) {
  const Liouvillian lv = liouvillian(p);
  const DensityMatrix rho_ss = steady_state(lv);
  const Evolver ev(lv);
  return emf_correlation(ev, rho_ss, p, tau_grid);
}

}  // namespace nmqed
