#pragma once

#include <span>
#include <vector>

#include "model.hpp"
#include "numerics.hpp"
#include "operators.hpp"

namespace nmqed {

// Column-stacking vectorization; vec index = col*dim + row, so that
// A rho B <-> (B^T kron A) vec(rho).
Eigen::VectorXcd vec(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd unvec(const Eigen::VectorXcd& v, int dim);

struct DensityTolerances {
  double hermiticity = 1e-10;
  double trace = 1e-10;
  double eigenvalue_floor = -1e-8;
};

struct DensityMatrix {
  Eigen::MatrixXcd rho;

  int dim() const { return static_cast<int>(rho.rows()); }
  static DensityMatrix basis_state(int dim, int index);  // |index><index|

  // Throws NumericsError when Hermiticity, unit trace, or positivity
  // (up to numerical noise) fail.
  void validate(const DensityTolerances& tol = {}) const;
};

// Generator of rho' = -i[H,rho] + kappa(2 a rho a+ - a+a rho - rho a+a)
//                   + gamma/2 (2 s- rho s+ - s+s- rho - rho s+s-),
// as a dim^2 x dim^2 matrix on vectorized states. The dissipator
// normalization is kept exactly as written: the resonator term carries kappa
// with no 1/2, so the phonon number decays at rate 2*kappa; the qubit term
// carries gamma/2.
struct Liouvillian {
  Eigen::MatrixXcd op;
  int dim;
};

Liouvillian liouvillian(const Params& p);

enum class Propagation {
  Auto,       // MatrixExp on uniform grids, AdaptiveRk otherwise
  MatrixExp,  // exp(L*dtau) applied repeatedly (uniform grids only)
  AdaptiveRk,
};

// rho(tau_i) = e^{L tau_i} rho0 on a strictly ascending grid starting at 0.
// Every output state is checked (trace drift 1e-8 is a diagnostic failure).
std::vector<DensityMatrix> propagate(const DensityMatrix& rho0, const Liouvillian& lv,
                                     std::span<const double> tau_grid,
                                     Propagation method = Propagation::Auto);

// Solves L vec(rho) = 0 with the trace row replacing one equation, then
// Hermitizes. Reports a singular-system failure when the kernel of L is not
// one-dimensional within tolerance.
DensityMatrix steady_state(const Liouvillian& lv);

// Reusable e^{L tau} evaluator for the regression pipeline, where states are
// generally not density matrices and sample counts are large. Factorizes L
// once (eigendecomposition, residual-checked); falls back to matrix
// exponential stepping / adaptive integration when the factorization is not
// trustworthy.
class Evolver {
public:
  explicit Evolver(const Liouvillian& lv);

  Eigen::VectorXcd apply(const Eigen::VectorXcd& x0, double tau) const;

  // Samples of u^T e^{L tau} x0 over an ascending grid (no conjugation:
  // u = vec(A^T) yields Tr(A * unvec(...))).
  Eigen::VectorXcd scalar_series(const Eigen::VectorXcd& u, const Eigen::VectorXcd& x0,
                                 std::span<const double> tau_grid) const;

  bool spectral() const { return spectral_; }
  int dim() const { return lv_.dim; }

private:
  Liouvillian lv_;
  bool spectral_ = false;
  Eigen::VectorXcd eigenvalues_;
  Eigen::MatrixXcd eigenvectors_;
  Eigen::MatrixXcd inverse_vectors_;
};

}  // namespace nmqed
