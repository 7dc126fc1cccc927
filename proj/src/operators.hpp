#pragma once

#include <Eigen/Dense>

namespace nmqed {

// Dense operator on the truncated qubit (x) resonator space. Entries are
// dimensionless matrix elements; physical units are carried by context.
using Operator = Eigen::MatrixXcd;

// Truncated Hilbert space: qubit levels {0,1} times Fock levels {0..n_fock}.
// Product-basis ordering is fixed globally as index = j*(n_fock+1) + k
// (qubit-major, phonon-minor); every module relies on it.
struct HilbertConfig {
  explicit HilbertConfig(int n_fock);

  int n_fock;
  int fock_dim() const { return n_fock + 1; }
  int dim() const { return 2 * (n_fock + 1); }
};

// Truncated ladder operator, <k-1|a|k> = sqrt(k) for k = 1..n_fock.
Operator annihilation(int n_fock);
Operator creation(int n_fock);

// Phonon number a^dag a with exact integer diagonal (avoids the one-ulp
// noise of sqrt(k)*sqrt(k)).
Operator fock_number(int n_fock);

// Qubit lowering operator in the basis (|0>, |1>): single entry <0|s-|1> = 1.
// With this convention [s-, s+] = diag(+1, -1), i.e. the commutator is +1 on
// the ground state; s_z itself is never used downstream.
Operator sigma_minus();
Operator sigma_plus();

// Kronecker product, first factor outermost. For system operators the qubit
// factor always comes first, realizing the fixed basis ordering above.
Operator tensor(const Operator& a, const Operator& b);

// Qubit/resonator operators embedded in the product space.
Operator lift_qubit(const Operator& q, const HilbertConfig& cfg);
Operator lift_resonator(const Operator& r, const HilbertConfig& cfg);

// Total excitation number N = s+s- (x) I + I (x) a^dag a; diagonal with
// entry j + k at |j,k>.
Operator number_operator(const HilbertConfig& cfg);

}  // namespace nmqed
