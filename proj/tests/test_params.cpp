#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "cqnc/params.hpp"

using namespace cqnc;

TEST_CASE("angles reduce to [-pi, pi)") {
  CHECK(reduce_angle(0.0) == 0.0);
  CHECK(reduce_angle(std::numbers::pi) == doctest::Approx(-std::numbers::pi));
  CHECK(reduce_angle(-std::numbers::pi) == doctest::Approx(-std::numbers::pi));
  CHECK(reduce_angle(1.5 * std::numbers::pi) == doctest::Approx(-0.5 * std::numbers::pi));
  CHECK(reduce_angle(-2.5 * std::numbers::pi) == doctest::Approx(-0.5 * std::numbers::pi));
  CHECK(reduce_angle(7.0) == doctest::Approx(7.0 - kTwoPi));
}

TEST_CASE("validation rejects out-of-domain inputs") {
  SystemParams p;
  CHECK_NOTHROW(validate(p));
  p.gamma_m = -1.0;
  CHECK_THROWS_AS(validate(p), std::invalid_argument);
  p = {};
  p.N_atoms = 0.0;
  CHECK_THROWS_AS(validate(p), std::invalid_argument);
  p = {};
  p.P_L = 0.0;  // an undriven cavity is a valid operating point
  CHECK_NOTHROW(validate(p));
  p.T = -0.1;
  CHECK_THROWS_AS(validate(p), std::invalid_argument);
  p = {};
  p.kappa = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(validate(p), std::invalid_argument);
}

TEST_CASE("baseline drive amplitude and steady state") {
  const SystemParams p = baseline();
  const DerivedState d = derive(p);

  // E_L^2 hbar omega_L / kappa must reproduce the input power
  CHECK(d.E_L * d.E_L * kHbar * p.omega_L / p.kappa ==
        doctest::Approx(p.P_L).epsilon(1e-14));
  CHECK(d.E_L == doctest::Approx(1.571434586e12).epsilon(1e-8));

  // with G' = 0, Delta = 0, G = 0 the cavity amplitude is real: 2 E_L / kappa
  CHECK(std::abs(d.alpha_s.imag()) < 1e-9 * std::abs(d.alpha_s.real()));
  CHECK(d.g == doctest::Approx(std::sqrt(2.0) * p.g0 * 2.0 * d.E_L / p.kappa).epsilon(1e-12));
  CHECK(d.X_s < 0);
  CHECK(d.Q == doctest::Approx(1e4).epsilon(1e-14));
  CHECK(d.n_excitation == 0.0);  // ensemble decoupled
}

TEST_CASE("coupling to power inversion round-trips") {
  SystemParams p = baseline();
  p.Delta = 0.5 * p.omega_m;
  p.G = 0.2 * p.kappa;
  p.theta = 0.7;
  p.G_prime = 1e6;
  for (double g_t : {1e3, 1e5, 2e7}) {
    const DerivedState d = derive_with_coupling(p, g_t);
    CHECK(d.g == doctest::Approx(g_t).epsilon(1e-9));
  }
  CHECK(power_for_coupling(p, 0.0) == 0.0);
  CHECK_THROWS_AS(power_for_coupling(p, -1.0), std::invalid_argument);
}

TEST_CASE("matched-coupling fixed point at the baseline drive") {
  const SystemParams pc = cqnc_defaults();
  CHECK(pc.Gamma == doctest::Approx(2.0 * pc.gamma_m).epsilon(1e-15));

  const DerivedState d = derive(pc);
  CHECK(std::abs(d.g - pc.G_prime) <= 1e-9 * pc.G_prime);
  CHECK(pc.G_prime == doctest::Approx(1.9912313e7).epsilon(1e-4));

  // amplitude balance: u |den(u)| = E_L with the G'-induced cavity shift
  const double u = pc.G_prime / (std::sqrt(2.0) * pc.g0);
  const double shift =
      pc.G_prime * pc.G_prime * pc.omega_m / (pc.omega_m * pc.omega_m + pc.Gamma * pc.Gamma / 4);
  const double mod = std::hypot(pc.kappa / 2, shift);
  CHECK(u * mod == doctest::Approx(d.E_L).epsilon(1e-10));

  SystemParams pm = baseline();
  pm.atom_damping = AtomDamping::Matched;
  pm = cqnc_configure(pm);
  CHECK(pm.Gamma == doctest::Approx(pm.gamma_m).epsilon(1e-15));
  CHECK(std::abs(derive(pm).g - pm.G_prime) <= 1e-9 * pm.G_prime);
}

TEST_CASE("fixed point handles the undriven and near-threshold edges") {
  SystemParams p = baseline();
  p.P_L = 0.0;
  CHECK(cqnc_configure(p).G_prime == 0.0);

  p = baseline();
  p.G = 0.3 * p.kappa;  // 2 G cos(0) > kappa/2: parametric threshold crossed
  CHECK_THROWS_AS(cqnc_configure(p), std::invalid_argument);
  p.theta = std::numbers::pi;
  CHECK_NOTHROW(cqnc_configure(p));

  p = baseline();
  p.G = 0.25 * p.kappa;  // steady-state denominator vanishes exactly
  CHECK_THROWS_AS(derive(p), pole_error);
}

TEST_CASE("ensemble excitation stays linear only at low drive power") {
  const SystemParams strong = cqnc_defaults();
  const ExcitationCheck hot = validate_low_excitation(strong, derive(strong));
  CHECK(hot.warn);
  CHECK(hot.ratio > 50.0);
  CHECK(hot.ratio < 80.0);

  SystemParams weak = baseline();
  weak.P_L = 1e-7;
  weak = cqnc_configure(weak);
  const DerivedState d = derive(weak);
  CHECK(d.n_excitation == doctest::Approx(1.08e5).epsilon(0.05));
  const ExcitationCheck ok = validate_low_excitation(weak, d);
  CHECK(!ok.warn);
  CHECK(ok.ratio == doctest::Approx(1.08e-3).epsilon(0.05));
}

TEST_CASE("experimental envelope flags out-of-range hardware") {
  CHECK(validate_experimental_ranges(baseline()).empty());
  SystemParams p = baseline();
  p.m = 1.0;
  CHECK(validate_experimental_ranges(p).size() == 1);
  p.kappa = kTwoPi * 1.0;
  CHECK(validate_experimental_ranges(p).size() == 2);
}
