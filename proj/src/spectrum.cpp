#include "spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "errors.hpp"

namespace nmqed {

using std::complex;

Spectrum half_line_fourier(const CorrelationSeries& corr, std::span<const double> omega_grid) {
  const std::size_t n = corr.tau.size();
  if (n != corr.values.size()) throw ConfigError("correlation grid/value lengths differ");
  if (n < 2) throw ConfigError("correlation series needs at least two samples");
  require_time_grid(corr.tau);
  const double dt = corr.tau[1] - corr.tau[0];
  for (std::size_t i = 1; i < n; ++i)
    if (std::abs(corr.tau[i] - corr.tau[i - 1] - dt) > 1e-9 * dt)
      throw ConfigError("half-line transform needs a uniform correlation grid");

  Spectrum s;
  s.omega.assign(omega_grid.begin(), omega_grid.end());
  for (std::size_t i = 1; i < s.omega.size(); ++i)
    if (!(s.omega[i] > s.omega[i - 1])) throw ConfigError("frequency grid must be ascending");

  double peak = 0.0;
  for (const auto& v : corr.values) peak = std::max(peak, std::abs(v));
  double tail = 0.0;
  for (std::size_t i = n - std::max<std::size_t>(1, n / 100); i < n; ++i)
    tail = std::max(tail, std::abs(corr.values[i]));
  s.tail_bound = peak > 0 ? tail / peak : 0.0;
  s.tail_ok = s.tail_bound < 1e-6;

  s.values.resize(s.omega.size());
  for (std::size_t i = 0; i < s.omega.size(); ++i) {
    const complex<double> phase_step = std::exp(complex<double>(0.0, -s.omega[i] * dt));
    complex<double> phase = 1.0;
    complex<double> acc = 0.5 * corr.values[0];
    for (std::size_t k = 1; k < n; ++k) {
      if (k % 8192 == 0) phase = std::exp(complex<double>(0.0, -s.omega[i] * corr.tau[k]));
      else phase *= phase_step;
      acc += (k + 1 == n ? 0.5 : 1.0) * phase * corr.values[k];
    }
    s.values[i] = (acc * dt).real() / std::numbers::pi;
  }
  return s;
}

PeakSet find_peaks(const Spectrum& s, double rel_threshold) {
  PeakSet out;
  const std::size_t n = s.values.size();
  if (n < 3) return out;
  double global_max = *std::max_element(s.values.begin(), s.values.end());
  if (!(global_max > 0)) return out;
  const double floor = rel_threshold * global_max;

  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double ym = s.values[i - 1], y0 = s.values[i], yp = s.values[i + 1];
    if (!(y0 > ym && y0 >= yp && y0 >= floor)) continue;
    const double h = s.omega[i + 1] - s.omega[i];
    const double den = ym - 2.0 * y0 + yp;
    const double d = den != 0.0 ? 0.5 * (ym - yp) / den : 0.0;
    Peak pk;
    pk.center = s.omega[i] + d * h;
    pk.height = y0 - 0.25 * (ym - yp) * d;

    const double half = 0.5 * pk.height;
    double left = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t k = i; k-- > 0;) {
      if (s.values[k] < half) {
        const double f = (half - s.values[k]) / (s.values[k + 1] - s.values[k]);
        left = s.omega[k] + f * (s.omega[k + 1] - s.omega[k]);
        break;
      }
    }
    double right = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t k = i + 1; k < n; ++k) {
      if (s.values[k] < half) {
        const double f = (s.values[k - 1] - half) / (s.values[k - 1] - s.values[k]);
        right = s.omega[k - 1] + f * (s.omega[k] - s.omega[k - 1]);
        break;
      }
    }
    pk.half_width = 0.5 * (right - left);
    out.peaks.push_back(pk);
  }
  if (out.peaks.size() == 2)
    out.splitting = std::abs(out.peaks[1].center - out.peaks[0].center);
  return out;
}

std::vector<double> default_omega_grid(const Params& p) {
  const Detunings d = detunings(p);
  const double center = -0.5 * d.delta_a - 0.5 * (d.delta_c + 2.0 * p.chi);
  const int n = 2001;
  const double lo = center - 4.0 * p.g, hi = center + 4.0 * p.g;
  std::vector<double> grid(n);
  for (int i = 0; i < n; ++i) grid[i] = lo + (hi - lo) * i / (n - 1);
  return grid;
}

std::vector<double> default_tau_grid(const Params& p, std::span<const double> omega_grid) {
  const SpectralParams sp = spectral_params(p);
  const double gamma_min = std::min(sp.gamma_1, sp.gamma_2);
  if (!(gamma_min > 0))
    throw DegenerateError("non-decaying closed-form peak (Gamma_min <= 0); no finite time grid");
  const double t_max = 14.0 / gamma_min;

  // largest oscillation rate of e^{-i omega tau} * corr within the window
  double om_span = 1.0;
  if (!omega_grid.empty()) {
    const double lo = omega_grid.front(), hi = omega_grid.back();
    for (double wn : {sp.omega_1, sp.omega_2})
      om_span = std::max({om_span, std::abs(lo - wn), std::abs(hi - wn)});
  }
  const double dt = 0.0346 / om_span;  // (om*dt)^2/12 <= 1e-4
  auto n = static_cast<std::size_t>(std::ceil(t_max / dt)) + 1;
  if (n > 4'000'000) n = 4'000'001;
  std::vector<double> grid(n);
  for (std::size_t i = 0; i < n; ++i) grid[i] = t_max * static_cast<double>(i) / (n - 1);
  return grid;
}

}  // namespace nmqed
