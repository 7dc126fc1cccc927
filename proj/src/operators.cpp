#include "operators.hpp"

#include <cmath>

#include "errors.hpp"

namespace nmqed {

HilbertConfig::HilbertConfig(int n_fock_) : n_fock(n_fock_) {
  if (n_fock < 1) throw ConfigError("n_fock must be >= 1, got " + std::to_string(n_fock));
}

Operator annihilation(int n_fock) {
  if (n_fock < 1) throw ConfigError("n_fock must be >= 1, got " + std::to_string(n_fock));
  Operator a = Operator::Zero(n_fock + 1, n_fock + 1);
  for (int k = 1; k <= n_fock; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  return a;
}

Operator creation(int n_fock) { return annihilation(n_fock).adjoint(); }

Operator fock_number(int n_fock) {
  if (n_fock < 1) throw ConfigError("n_fock must be >= 1, got " + std::to_string(n_fock));
  Operator n = Operator::Zero(n_fock + 1, n_fock + 1);
  for (int k = 0; k <= n_fock; ++k) n(k, k) = static_cast<double>(k);
  return n;
}

Operator sigma_minus() {
  Operator s = Operator::Zero(2, 2);
  s(0, 1) = 1.0;
  return s;
}

Operator sigma_plus() { return sigma_minus().adjoint(); }

Operator tensor(const Operator& a, const Operator& b) {
  const Eigen::Index ra = a.rows(), ca = a.cols(), rb = b.rows(), cb = b.cols();
  Operator out(ra * rb, ca * cb);
  for (Eigen::Index i = 0; i < ra; ++i)
    for (Eigen::Index j = 0; j < ca; ++j) out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
  return out;
}

Operator lift_qubit(const Operator& q, const HilbertConfig& cfg) {
  return tensor(q, Operator::Identity(cfg.fock_dim(), cfg.fock_dim()));
}

Operator lift_resonator(const Operator& r, const HilbertConfig&) {
  return tensor(Operator::Identity(2, 2), r);
}

Operator number_operator(const HilbertConfig& cfg) {
  return lift_qubit(sigma_plus() * sigma_minus(), cfg) + lift_resonator(fock_number(cfg.n_fock), cfg);
}

}  // namespace nmqed
