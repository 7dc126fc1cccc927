#include "dynamics.hpp"

#include <Eigen/Eigenvalues>
#include <array>
#include <cmath>
#include <complex>
#include <sstream>

namespace nmqed {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using std::complex;

VectorXcd vec(const MatrixXcd& m) {
  return Eigen::Map<const VectorXcd>(m.data(), m.size());
}

MatrixXcd unvec(const VectorXcd& v, int dim) {
  return Eigen::Map<const MatrixXcd>(v.data(), dim, dim);
}

DensityMatrix DensityMatrix::basis_state(int dim, int index) {
  MatrixXcd rho = MatrixXcd::Zero(dim, dim);
  rho(index, index) = 1.0;
  return {rho};
}

void DensityMatrix::validate(const DensityTolerances& tol) const {
  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol.hermiticity) {
    std::ostringstream os;
    os << "state not Hermitian: max |rho - rho^+| = " << herm;
    throw NumericsError(os.str());
  }
  const double trace_err = std::abs(rho.trace() - 1.0);
  if (trace_err > tol.trace) {
    std::ostringstream os;
    os << "state trace drifted: |tr - 1| = " << trace_err;
    throw NumericsError(os.str());
  }
  const MatrixXcd herm_part = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(herm_part, Eigen::EigenvaluesOnly);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < tol.eigenvalue_floor) {
    std::ostringstream os;
    os << "state not positive semidefinite: min eigenvalue = " << min_eig;
    throw NumericsError(os.str());
  }
}

namespace {

// vec(A rho) = (I kron A) vec(rho)
MatrixXcd act_left(const MatrixXcd& a) {
  return tensor(MatrixXcd::Identity(a.rows(), a.cols()), a);
}

// vec(rho B) = (B^T kron I) vec(rho)
MatrixXcd act_right(const MatrixXcd& b) {
  return tensor(b.transpose(), MatrixXcd::Identity(b.rows(), b.cols()));
}

// vec(A rho B) = (B^T kron A) vec(rho)
MatrixXcd act_both(const MatrixXcd& a, const MatrixXcd& b) { return tensor(b.transpose(), a); }

bool uniform_grid(std::span<const double> grid, double* step) {
  if (grid.size() < 2) {
    *step = 0.0;
    return true;
  }
  const double h = grid[1] - grid[0];
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double hi = grid[i] - grid[i - 1];
    if (std::abs(hi - h) > 1e-9 * std::max(1.0, std::abs(h))) return false;
  }
  *step = h;
  return true;
}

}  // namespace

Liouvillian liouvillian(const Params& p) {
  const HilbertConfig cfg(p.n_fock);
  const MatrixXcd h = hamiltonian_rotating(p);
  const MatrixXcd a = lift_resonator(annihilation(p.n_fock), cfg);
  const MatrixXcd ad = a.adjoint();
  const MatrixXcd sm = lift_qubit(sigma_minus(), cfg);
  const MatrixXcd sp = sm.adjoint();
  const MatrixXcd n = lift_resonator(fock_number(p.n_fock), cfg);
  const MatrixXcd pe = sp * sm;

  const complex<double> i(0.0, 1.0);
  MatrixXcd op = -i * (act_left(h) - act_right(h));
  op += p.kappa * (2.0 * act_both(a, ad) - act_left(n) - act_right(n));
  op += 0.5 * p.gamma * (2.0 * act_both(sm, sp) - act_left(pe) - act_right(pe));
  return {std::move(op), cfg.dim()};
}

std::vector<DensityMatrix> propagate(const DensityMatrix& rho0, const Liouvillian& lv,
                                     std::span<const double> tau_grid, Propagation method) {
  require_time_grid(tau_grid);
  double step = 0.0;
  const bool uniform = uniform_grid(tau_grid, &step);
  if (method == Propagation::Auto)
    method = uniform ? Propagation::MatrixExp : Propagation::AdaptiveRk;
  if (method == Propagation::MatrixExp && !uniform)
    throw ConfigError("matrix-exponential propagation needs a uniform time grid");

  const DensityTolerances run_tol{1e-10, 1e-8, -1e-8};
  std::vector<DensityMatrix> out;
  out.reserve(tau_grid.size());

  if (method == Propagation::MatrixExp) {
    VectorXcd x = vec(rho0.rho);
    out.push_back(rho0);
    if (tau_grid.size() > 1) {
      const MatrixXcd e = expm(lv.op * step);
      for (std::size_t k = 1; k < tau_grid.size(); ++k) {
        x = e * x;
        out.push_back({unvec(x, lv.dim)});
      }
    }
  } else {
    auto rhs = [&lv](double, const VectorXcd& y) -> VectorXcd { return lv.op * y; };
    auto states = integrate_ode(rhs, vec(rho0.rho), tau_grid, OdeOptions{});
    for (const auto& x : states) out.push_back({unvec(x, lv.dim)});
  }

  for (const auto& s : out) s.validate(run_tol);
  return out;
}

DensityMatrix steady_state(const Liouvillian& lv) {
  const int d = lv.dim;
  const int d2 = d * d;
  MatrixXcd m = lv.op;
  for (int c = 0; c < d2; ++c) m(0, c) = 0.0;
  for (int i = 0; i < d; ++i) m(0, i * d + i) = 1.0;  // trace row
  VectorXcd b = VectorXcd::Zero(d2);
  b(0) = 1.0;

  Eigen::PartialPivLU<MatrixXcd> lu(m);

  // A singular augmented system means the kernel of L is not one-dimensional
  // (the system may still be consistent, so a residual check alone would
  // silently pick one of many steady states).
  const auto udiag = lu.matrixLU().diagonal();
  const double umax = udiag.cwiseAbs().maxCoeff();
  const double umin = udiag.cwiseAbs().minCoeff();
  if (!(umin > 1e-12 * umax)) {
    Eigen::FullPivLU<MatrixXcd> flu(m);
    flu.setThreshold(1e-9);
    std::ostringstream os;
    os << "steady state is not unique: augmented system rank " << flu.rank() << " < " << d2;
    throw NumericsError(os.str());
  }

  VectorXcd x = lu.solve(b);
  x += lu.solve(b - m * x);  // one refinement pass
  const double resid = (lv.op * x).cwiseAbs().maxCoeff();
  if (!x.allFinite() || resid > 1e-10) {
    std::ostringstream os;
    os << "steady-state solve did not converge: residual " << resid;
    throw NumericsError(os.str());
  }

  MatrixXcd rho = unvec(x, d);
  rho = 0.5 * (rho + rho.adjoint().eval());
  DensityMatrix out{std::move(rho)};
  out.validate();
  return out;
}

Evolver::Evolver(const Liouvillian& lv) : lv_(lv) {
  Eigen::ComplexEigenSolver<MatrixXcd> es(lv.op, true);
  if (es.info() != Eigen::Success) return;
  const MatrixXcd& v = es.eigenvectors();
  const double recon = (lv.op * v - v * es.eigenvalues().asDiagonal()).cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, lv.op.cwiseAbs().maxCoeff());
  if (recon > 1e-10 * scale) return;
  // A defective L reconstructs fine but leaves V (nearly) singular, and
  // backward-stable solves hide that from residual probes; gate on the
  // conditioning itself.
  Eigen::PartialPivLU<MatrixXcd> lu(v);
  const MatrixXcd vinv = lu.inverse();
  if (!vinv.allFinite()) return;
  const double cond = v.cwiseAbs().rowwise().sum().maxCoeff() *
                      vinv.cwiseAbs().rowwise().sum().maxCoeff();
  if (!(cond < 1e8)) return;
  eigenvalues_ = es.eigenvalues();
  eigenvectors_ = v;
  inverse_vectors_ = vinv;
  spectral_ = true;
}

VectorXcd Evolver::apply(const VectorXcd& x0, double tau) const {
  if (spectral_) {
    VectorXcd beta = inverse_vectors_ * x0;
    for (Eigen::Index k = 0; k < beta.size(); ++k)
      beta[k] *= std::exp(eigenvalues_[k] * tau);
    return eigenvectors_ * beta;
  }
  if (tau == 0.0) return x0;
  const std::array<double, 2> grid{0.0, tau};
  auto rhs = [this](double, const VectorXcd& y) -> VectorXcd { return lv_.op * y; };
  return integrate_ode(rhs, x0, grid, OdeOptions{}).back();
}

VectorXcd Evolver::scalar_series(const VectorXcd& u, const VectorXcd& x0,
                                 std::span<const double> tau_grid) const {
  require_time_grid(tau_grid);
  const std::size_t n = tau_grid.size();
  VectorXcd out(n);

  if (spectral_) {
    const VectorXcd beta = inverse_vectors_ * x0;
    const VectorXcd alpha = eigenvectors_.transpose() * u;
    const VectorXcd w = alpha.cwiseProduct(beta);
    double step = 0.0;
    if (uniform_grid(tau_grid, &step) && n > 2) {
      // multiplicative phase recurrence, refreshed periodically to cap drift
      const Eigen::Index m = w.size();
      VectorXcd phase(m), cur(m);
      for (Eigen::Index k = 0; k < m; ++k) phase[k] = std::exp(eigenvalues_[k] * step);
      for (std::size_t i = 0; i < n; ++i) {
        if (i % 4096 == 0) {
          for (Eigen::Index k = 0; k < m; ++k) cur[k] = std::exp(eigenvalues_[k] * tau_grid[i]);
        }
        out[i] = w.cwiseProduct(cur).sum();
        cur = cur.cwiseProduct(phase);
      }
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        complex<double> acc = 0.0;
        for (Eigen::Index k = 0; k < w.size(); ++k)
          acc += w[k] * std::exp(eigenvalues_[k] * tau_grid[i]);
        out[i] = acc;
      }
    }
    return out;
  }

  double step = 0.0;
  if (uniform_grid(tau_grid, &step) && n > 1) {
    const MatrixXcd e = expm(lv_.op * step);
    VectorXcd x = x0;
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = u.cwiseProduct(x).sum();
      if (i + 1 < n) x = e * x;
    }
  } else {
    auto rhs = [this](double, const VectorXcd& y) -> VectorXcd { return lv_.op * y; };
    auto states = integrate_ode(rhs, x0, tau_grid, OdeOptions{});
    for (std::size_t i = 0; i < n; ++i) out[i] = u.cwiseProduct(states[i]).sum();
  }
  return out;
}

}  // namespace nmqed
