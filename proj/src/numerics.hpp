#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "errors.hpp"

namespace nmqed {

// Dense matrix exponential (Pade scaling-and-squaring).
Eigen::MatrixXcd expm(const Eigen::MatrixXcd& m);

void require_time_grid(std::span<const double> grid, bool from_zero = true);

struct OdeOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  double max_step = std::numeric_limits<double>::infinity();
};

// Adaptive Dormand-Prince 5(4) for y' = f(t, y) on complex state vectors.
// Returns y at each requested time; `times` must be non-decreasing and start
// at the initial time t0 = times[0] with state y0.
template <typename Rhs>
std::vector<Eigen::VectorXcd> integrate_ode(Rhs&& f, const Eigen::VectorXcd& y0,
                                            std::span<const double> times,
                                            const OdeOptions& opt = {}) {
  using Vec = Eigen::VectorXcd;
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                          a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  // embedded 4th-order weights
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                          e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  if (times.empty()) return {};
  std::vector<Vec> out;
  out.reserve(times.size());
  out.push_back(y0);

  double t = times[0];
  Vec y = y0;
  Vec k1 = f(t, y);
  double h = 0.0;

  auto err_norm = [&](const Vec& err, const Vec& ya, const Vec& yb) {
    double m = 0.0;
    for (Eigen::Index i = 0; i < err.size(); ++i) {
      const double scale = opt.atol + opt.rtol * std::max(std::abs(ya[i]), std::abs(yb[i]));
      m = std::max(m, std::abs(err[i]) / scale);
    }
    return m;
  };

  for (std::size_t idx = 1; idx < times.size(); ++idx) {
    const double t_end = times[idx];
    if (t_end < t) throw ConfigError("integration times must be non-decreasing");
    if (t_end == t) {
      out.push_back(y);
      continue;
    }
    if (h <= 0.0) {
      const double d0 = y.cwiseAbs().maxCoeff() * opt.rtol + opt.atol;
      const double d1 = k1.cwiseAbs().maxCoeff();
      h = std::min({d1 > 0 ? 0.01 * d0 / d1 : 1e-3, t_end - t, opt.max_step});
      h = std::max(h, 1e-12);
    }
    while (t < t_end) {
      h = std::min({h, t_end - t, opt.max_step});
      const Vec k2 = f(t + c2 * h, y + h * (a21 * k1));
      const Vec k3 = f(t + c3 * h, y + h * (a31 * k1 + a32 * k2));
      const Vec k4 = f(t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
      const Vec k5 = f(t + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
      const Vec k6 = f(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
      const Vec ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      const Vec k7 = f(t + h, ynew);
      const Vec err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
      const double e = err_norm(err, y, ynew);
      if (e <= 1.0) {
        t += h;
        y = ynew;
        k1 = k7;  // FSAL
      }
      const double factor = e > 0 ? 0.9 * std::pow(e, -0.2) : 5.0;
      h *= std::clamp(factor, 0.2, 5.0);
      if (!(h > 0) || t + h == t)
        throw NumericsError("adaptive integrator step size underflow at t = " + std::to_string(t));
    }
    out.push_back(y);
  }
  return out;
}

}  // namespace nmqed
