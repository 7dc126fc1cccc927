#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <numbers>

#include "errors.hpp"
#include "model.hpp"
#include "test_util.hpp"

using namespace nmqed;
using testutil::max_abs_diff;

TEST_CASE("detunings") {
  Params p;
  p.omega_a = 2.0;
  p.omega_c = 2.0;
  p.omega_p = 1.0;
  const Detunings d = detunings(p);
  CHECK(d.delta_a == 1.0);
  CHECK(d.delta_c == 1.0);
  CHECK(d.delta == 0.0);

  p.omega_a = p.omega_p;
  CHECK(detunings(p).delta_a == 0.0);

  p.omega_a = 1.2;
  p.omega_c = 1.5;
  p.omega_p = 1.0;
  CHECK(detunings(p).delta == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(detunings(p).delta == detunings(p).delta_c - detunings(p).delta_a);
}

TEST_CASE("parameter validation") {
  Params p = testutil::resonant_params();
  CHECK(validate_params(p).empty());

  p.chi = -0.01;
  CHECK_THROWS_AS(validate_params(p), ConfigError);
  CHECK_NOTHROW(validate_params(p, /*allow_negative_chi=*/true));

  p = testutil::resonant_params();
  p.chi = 0.05;  // > g/5
  CHECK(validate_params(p).size() == 1);

  p = testutil::resonant_params();
  p.g = 0.0;
  CHECK_THROWS_AS(validate_params(p), ConfigError);
  p = testutil::resonant_params();
  p.kappa = -1.0;
  CHECK_THROWS_AS(validate_params(p), ConfigError);
  p = testutil::resonant_params();
  p.n_fock = 0;
  CHECK_THROWS_AS(validate_params(p), ConfigError);
}

TEST_CASE("resonant doublet of the one-excitation block") {
  Params p = testutil::resonant_params(0.0, 0.0, 3);
  const Operator h = hamiltonian_rotating(p);
  const int nb = p.n_fock + 1;
  Eigen::Matrix2cd block;
  block << h(1, 1), h(1, nb), h(nb, 1), h(nb, nb);  // |0,1>, |1,0>
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(block);
  const Detunings d = detunings(p);
  CHECK(es.eigenvalues()(0) == doctest::Approx(d.delta_c - p.g).epsilon(1e-14));
  CHECK(es.eigenvalues()(1) == doctest::Approx(d.delta_c + p.g).epsilon(1e-14));
}

TEST_CASE("kerr ladder diagonal") {
  Params p = testutil::resonant_params(0.0, 0.03, 4);
  p.g = 0.0;  // decoupled qubit; construction accepts what validation rejects
  const Operator h = hamiltonian_rotating(p);
  const Detunings d = detunings(p);
  for (int k = 0; k <= p.n_fock; ++k) {
    const double expected = d.delta_c * k + p.chi * k + p.chi * k * k;
    CHECK(std::abs(h(k, k) - expected) < 1e-15);
  }
  CHECK(std::abs(h(2, 2) - (2.0 * d.delta_c + 6.0 * p.chi)) < 1e-15);
}

TEST_CASE("paper-scale Hamiltonian is 22x22 and exactly Hermitian") {
  const Params p = testutil::resonant_params();
  const Operator h = hamiltonian_rotating(p);
  REQUIRE(h.rows() == 22);
  REQUIRE(h.cols() == 22);
  CHECK(max_abs_diff(h, h.adjoint()) == 0.0);
}

TEST_CASE("commutes with excitation number when undriven") {
  Params p = testutil::resonant_params(0.0, 0.01, 5);
  const Operator h = hamiltonian_rotating(p);
  const Operator n = number_operator(HilbertConfig(p.n_fock));
  CHECK((h * n - n * h).cwiseAbs().maxCoeff() == 0.0);

  p.xi = 0.02;
  const Operator hd = hamiltonian_rotating(p);
  CHECK((hd * n - n * hd).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("chi = 0 without drive is the plain exchange model, entry for entry") {
  Params p = testutil::resonant_params(0.0, 0.0, 4);
  p.omega_a = 1.3;  // detuned on purpose
  const Operator h = hamiltonian_rotating(p);
  const Detunings d = detunings(p);
  const int nb = p.n_fock + 1;
  Operator ref = Operator::Zero(2 * nb, 2 * nb);
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < nb; ++k) ref(j * nb + k, j * nb + k) = d.delta_a * j + d.delta_c * k;
  for (int k = 0; k + 1 < nb; ++k) {
    // g * sqrt(k+1) couples |1,k> and |0,k+1>
    ref(1 * nb + k, 0 * nb + k + 1) = p.g * std::sqrt(k + 1.0);
    ref(0 * nb + k + 1, 1 * nb + k) = p.g * std::sqrt(k + 1.0);
  }
  CHECK(max_abs_diff(h, ref) == 0.0);
}

TEST_CASE("lab-frame drive phases") {
  Params p = testutil::resonant_params(0.05, 0.0, 2);
  p.omega_a = 1.0;
  p.omega_c = 1.0;
  p.omega_p = 0.8;

  const Operator h0 = hamiltonian_lab(p, 0.0);
  Params off = p;
  off.xi = 0.0;
  const Operator href = hamiltonian_lab(off, 0.0);
  CHECK(max_abs_diff(h0, href) == 0.0);  // sin(0) kills the drive

  // xi = 0: time independent
  CHECK(max_abs_diff(hamiltonian_lab(off, 0.3), hamiltonian_lab(off, 17.0)) == 0.0);

  // omega_p t = pi/2: drive coefficient exactly -xi
  const double t = std::numbers::pi / 2.0 / p.omega_p;
  const Operator ht = hamiltonian_lab(p, t);
  const HilbertConfig cfg(p.n_fock);
  const Operator quad = lift_resonator(annihilation(p.n_fock) + creation(p.n_fock), cfg);
  CHECK(max_abs_diff(ht - href, -p.xi * std::sin(p.omega_p * t) * quad) == 0.0);
  CHECK(std::sin(p.omega_p * t) == 1.0);
  CHECK(max_abs_diff(ht, ht.adjoint()) == 0.0);
}
