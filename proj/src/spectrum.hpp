#pragma once

#include <optional>
#include <span>
#include <vector>

#include "analytic.hpp"
#include "correlation.hpp"

namespace nmqed {

struct Spectrum {
  std::vector<double> omega;   // ascending, GHz
  std::vector<double> values;  // arbitrary units
  // fraction of the correlation envelope left at the end of the time grid;
  // the transform warns (tail_ok = false) when it exceeds 1e-6
  double tail_bound = 0.0;
  bool tail_ok = true;
};

// S(omega) = (1/pi) Re sum_k w_k e^{-i omega tau_k} corr(tau_k), trapezoid
// weights on a uniform tau grid.
Spectrum half_line_fourier(const CorrelationSeries& corr, std::span<const double> omega_grid);

struct Peak {
  double center;      // GHz, refined by quadratic interpolation
  double height;      // arbitrary units
  double half_width;  // half width at half maximum, GHz (NaN if off-grid)
};

struct PeakSet {
  std::vector<Peak> peaks;               // sorted by center
  std::optional<double> splitting;       // |center_1 - center_2| iff exactly two peaks
};

// Local maxima above `rel_threshold` of the global maximum, each refined by a
// parabola through the three surrounding samples; half-widths from
// half-maximum crossings by linear interpolation. Zero or more than two
// peaks is reported, not an error.
PeakSet find_peaks(const Spectrum& s, double rel_threshold = 0.05);

// Default frequency window: 2001 points over [center - 4g, center + 4g] with
// center = -Delta_a/2 - (Delta_c + 2 chi)/2, guaranteed to contain both peaks.
std::vector<double> default_omega_grid(const Params& p);

// Default time grid for the transform: uniform up to T_max = 14/Gamma_min
// (tail e^{-14} < 1e-6), with the step chosen so that trapezoid phase error
// stays below ~1e-4 of each Lorentzian component over the frequency window.
std::vector<double> default_tau_grid(const Params& p, std::span<const double> omega_grid);

}  // namespace nmqed
