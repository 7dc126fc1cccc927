#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "model.hpp"

namespace testutil {

inline double max_abs_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

// Fixed-step RK4, independent of the library integrator; the brute-force
// oracle for small systems.
inline Eigen::VectorXcd rk4(const std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)>& f,
                            Eigen::VectorXcd y, double t_end, double h) {
  double t = 0.0;
  while (t < t_end) {
    const double step = std::min(h, t_end - t);
    const Eigen::VectorXcd k1 = f(y);
    const Eigen::VectorXcd k2 = f(y + 0.5 * step * k1);
    const Eigen::VectorXcd k3 = f(y + 0.5 * step * k2);
    const Eigen::VectorXcd k4 = f(y + step * k3);
    y += (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t += step;
  }
  return y;
}

// Parameter draws over the documented study ranges.
struct ParamSampler {
  std::mt19937 rng{12345};

  nmqed::Params draw() {
    auto uni = [this](double lo, double hi) {
      return std::uniform_real_distribution<double>(lo, hi)(rng);
    };
    nmqed::Params p;
    p.omega_p = 0.0;
    p.omega_a = uni(0.5, 1.5);
    p.omega_c = uni(0.5, 1.5);
    p.g = uni(0.05, 0.5);
    p.chi = uni(0.0, 0.05);
    p.kappa = uni(0.001, 0.02);
    p.gamma = uni(0.001, 0.02);
    p.xi = uni(0.0, 0.05);
    p.n_fock = 3;
    return p;
  }
};

inline std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return out;
}

inline nmqed::Params resonant_params(double xi = 0.02, double chi = 0.01, int n_fock = 10) {
  nmqed::Params p;  // defaults are the resonant working point
  p.xi = xi;
  p.chi = chi;
  p.n_fock = n_fock;
  return p;
}

}  // namespace testutil
