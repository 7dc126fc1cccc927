#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>

#include "analytic.hpp"
#include "correlation.hpp"
#include "errors.hpp"
#include "test_util.hpp"

using namespace nmqed;
using std::complex;

namespace {

struct Pipeline {
  Liouvillian lv;
  DensityMatrix rho_ss;
  Evolver ev;
  Operator a, ad;

  explicit Pipeline(const Params& p)
      : lv(liouvillian(p)),
        rho_ss(steady_state(lv)),
        ev(lv),
        a(lift_resonator(annihilation(p.n_fock), HilbertConfig(p.n_fock))),
        ad(a.adjoint()) {}
};

}  // namespace

TEST_CASE("identity-identity correlation is constant one") {
  const Params p = testutil::resonant_params(0.02, 0.01, 3);
  const Pipeline pl(p);
  const Operator id = Operator::Identity(pl.lv.dim, pl.lv.dim);
  const auto grid = testutil::linspace(0.0, 500.0, 51);
  const CorrelationSeries c = two_time(pl.ev, pl.rho_ss, id, id, grid);
  for (const auto& v : c.values) CHECK(std::abs(v - 1.0) < 1e-12);
}

TEST_CASE("equal-time values reduce to steady expectations") {
  const Params p = testutil::resonant_params(0.02, 0.01, 3);
  const Pipeline pl(p);
  const std::array<double, 2> grid{0.0, 1.0};
  const std::array<std::pair<const Operator*, const Operator*>, 4> pairs{
      {{&pl.a, &pl.ad}, {&pl.ad, &pl.a}, {&pl.a, &pl.a}, {&pl.ad, &pl.ad}}};
  for (const auto& [A, B] : pairs) {
    const CorrelationSeries c = two_time(pl.ev, pl.rho_ss, *A, *B, grid);
    const complex<double> direct = ((*A) * (*B) * pl.rho_ss.rho).trace();
    CHECK(std::abs(c.values[0] - direct) < 1e-12);
  }
}

TEST_CASE("undriven regression reproduces the closed-form coefficient") {
  const Params p = testutil::resonant_params(0.0, 0.01);  // xi = 0
  const Pipeline pl(p);
  const auto grid = testutil::linspace(0.0, 1500.0, 751);

  const CorrelationSeries c = two_time(pl.ev, pl.rho_ss, pl.a, pl.ad, grid);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    worst = std::max(worst, std::abs(c.values[i] - std::conj(mu_nu_c(p, grid[i]).mu)));
  CHECK(worst < 1e-8);

  const CorrelationSeries caa = two_time(pl.ev, pl.rho_ss, pl.a, pl.a, grid);
  const CorrelationSeries cdd = two_time(pl.ev, pl.rho_ss, pl.ad, pl.ad, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(std::abs(caa.values[i]) < 1e-12);
    CHECK(std::abs(cdd.values[i]) < 1e-12);
  }

  // emf correlation: starts at <a a+>_vac = 1 and equals mu* throughout
  const CorrelationSeries emf = emf_correlation(pl.ev, pl.rho_ss, p, grid);
  CHECK(std::abs(emf.values[0] - 1.0) < 1e-12);
  double worst_emf = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    worst_emf = std::max(worst_emf, std::abs(emf.values[i] - std::conj(mu_nu_c(p, grid[i]).mu)));
  CHECK(worst_emf < 1e-8);
}

TEST_CASE("driven deviation from the closed form scales as xi squared") {
  // small space keeps the eigensolves cheap; the scaling is what matters
  const auto grid = testutil::linspace(0.0, 2500.0, 501);
  auto deviation = [&](double xi) {
    const Params p = testutil::resonant_params(xi, 0.0, 5);
    const CorrelationSeries emf = emf_correlation(p, grid);
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
      worst = std::max(worst, std::abs(emf.values[i] - std::conj(mu_nu_c(p, grid[i]).mu)));
    return worst;
  };
  const double d1 = deviation(0.01);
  const double d2 = deviation(0.02);
  CHECK(d2 / d1 == doctest::Approx(4.0).epsilon(0.15));
  CHECK(d2 < 10.0 * 0.02 * 0.02);
  CHECK(d1 < 10.0 * 0.01 * 0.01);
}

TEST_CASE("oscillation envelope decays monotonically on resonance") {
  const Params p = testutil::resonant_params(0.0, 0.0);  // delta = 0, equal widths
  const auto grid = testutil::linspace(0.0, 3000.0, 3001);
  const CorrelationSeries emf = emf_correlation(p, grid);
  CHECK(std::abs(emf.values[0] - 1.0) < 1e-12);
  double prev_peak = 2.0;
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    const double m = std::abs(emf.values[i]);
    if (m > std::abs(emf.values[i - 1]) && m >= std::abs(emf.values[i + 1])) {
      CHECK(m <= prev_peak * (1.0 + 1e-12));
      prev_peak = m;
    }
  }
}

TEST_CASE("truncation at ten phonons is converged") {
  const auto grid = testutil::linspace(0.0, 2000.0, 1001);
  const CorrelationSeries c10 = emf_correlation(testutil::resonant_params(0.02, 0.01, 10), grid);
  const CorrelationSeries c15 = emf_correlation(testutil::resonant_params(0.02, 0.01, 15), grid);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    worst = std::max(worst, std::abs(c10.values[i] - c15.values[i]));
  CHECK(worst < 1e-6);
}

TEST_CASE("grid validation propagates") {
  const Params p = testutil::resonant_params(0.02, 0.01, 2);
  const Pipeline pl(p);
  CHECK_THROWS_AS(two_time(pl.ev, pl.rho_ss, pl.a, pl.ad, std::array<double, 2>{1.0, 2.0}),
                  ConfigError);
  CHECK_THROWS_AS(emf_correlation(p, std::array<double, 3>{0.0, 2.0, 1.0}), ConfigError);
}
