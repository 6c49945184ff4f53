#include "cqnc/params.hpp"

#include <cmath>

namespace cqnc {

double reduce_angle(double theta) {
  double r = std::fmod(theta + std::numbers::pi, kTwoPi);
  if (r < 0) r += kTwoPi;
  return r - std::numbers::pi;
}

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

// Steady-state denominator of the cavity amplitude at fixed G_prime.  The
// imaginary part carries the ensemble-induced cavity shift
// G'^2 omega_m / (omega_m^2 + Gamma^2/4).
Complex steady_denominator(const SystemParams& p) {
  const double shift =
      p.G_prime * p.G_prime * p.omega_m / (p.omega_m * p.omega_m + p.Gamma * p.Gamma / 4.0);
  return {p.kappa / 2.0 - 2.0 * p.G * std::cos(p.theta),
          p.Delta - 2.0 * p.G * std::sin(p.theta) + shift};
}

}  // namespace

void validate(const SystemParams& p) {
  for (double v : {p.m, p.omega_m, p.gamma_m, p.kappa, p.g0, p.P_L, p.omega_L,
                   p.Delta, p.G, p.theta, p.Gamma, p.G_prime, p.T, p.N_atoms})
    require(std::isfinite(v), "parameters must be finite");
  require(p.m > 0, "mass must be positive");
  require(p.omega_m > 0, "omega_m must be positive");
  require(p.gamma_m > 0, "gamma_m must be positive");
  require(p.kappa > 0, "kappa must be positive");
  require(p.g0 > 0, "g0 must be positive");
  require(p.omega_L > 0, "omega_L must be positive");
  require(p.Gamma > 0, "Gamma must be positive");
  require(p.P_L >= 0, "P_L must be nonnegative");
  require(p.G >= 0, "OPA gain must be nonnegative");
  require(p.G_prime >= 0, "G_prime must be nonnegative");
  require(p.T >= 0, "temperature must be nonnegative");
  require(p.N_atoms >= 1, "N_atoms must be at least 1");
}

SystemParams baseline() { return {}; }

DerivedState derive(const SystemParams& p) {
  validate(p);
  DerivedState d{};
  d.E_L = std::sqrt(p.kappa * p.P_L / (kHbar * p.omega_L));
  const Complex den = steady_denominator(p);
  const double floor_abs = 1e-12 * std::max(p.omega_m, p.kappa);
  if (std::abs(den) < floor_abs)
    throw pole_error("steady-state denominator vanishes: drive at parametric threshold");
  d.alpha_s = d.E_L / den;
  const double mod = std::abs(d.alpha_s);
  d.X_s = -p.g0 * mod * mod / p.omega_m;
  d.d_s = Complex(0.0, p.G_prime) * d.alpha_s / Complex(-p.Gamma / 2.0, p.omega_m);
  d.g = std::sqrt(2.0) * p.g0 * mod;
  d.Q = p.omega_m / p.gamma_m;
  d.n_excitation = std::norm(d.d_s);
  return d;
}

double power_for_coupling(const SystemParams& p, double g_target) {
  validate(p);
  require(g_target >= 0 && std::isfinite(g_target), "coupling must be nonnegative");
  if (g_target == 0) return 0.0;
  const double u = g_target / (std::sqrt(2.0) * p.g0);
  const double E_L = u * std::abs(steady_denominator(p));
  return E_L * E_L * kHbar * p.omega_L / p.kappa;
}

DerivedState derive_with_coupling(SystemParams p, double g_target) {
  p.P_L = power_for_coupling(p, g_target);
  return derive(p);
}

SystemParams cqnc_configure(SystemParams p) {
  p.Gamma = (p.atom_damping == AtomDamping::Matched) ? p.gamma_m : 2.0 * p.gamma_m;
  validate(p);
  const double a = p.kappa / 2.0 - 2.0 * p.G * std::cos(p.theta);
  if (a <= 0)
    throw std::invalid_argument("OPA gain at or beyond cavity threshold: kappa/2 <= 2 G cos(theta)");
  const double b = p.Delta - 2.0 * p.G * std::sin(p.theta);
  const double c = 2.0 * p.g0 * p.g0 * p.omega_m / (p.omega_m * p.omega_m + p.Gamma * p.Gamma / 4.0);
  const double E_L = std::sqrt(p.kappa * p.P_L / (kHbar * p.omega_L));
  if (E_L == 0) {
    p.G_prime = 0.0;
    return p;
  }
  // Solve u |a + i(b + c u^2)| = E_L for u = |alpha_s|; the left side is
  // zero at u = 0 and exceeds E_L at u = E_L/a + 1 since |den| >= a.
  auto excess = [&](double u) { return u * std::hypot(a, b + c * u * u) - E_L; };
  double lo = 0.0, hi = E_L / a + 1.0;
  for (int i = 0; i < 200 && (hi - lo) > 1e-14 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) >= 0 ? hi : lo) = mid;
  }
  double u = 0.5 * (lo + hi);
  for (int i = 0; i < 3; ++i) {
    const double im = b + c * u * u;
    const double mod = std::hypot(a, im);
    const double slope = mod + 2.0 * c * u * u * im / mod;
    if (slope > 0) u -= (u * mod - E_L) / slope;
  }
  p.G_prime = std::sqrt(2.0) * p.g0 * u;
  return p;
}

SystemParams cqnc_defaults() { return cqnc_configure(baseline()); }

ExcitationCheck validate_low_excitation(const SystemParams& p, const DerivedState& d) {
  const double ratio = d.n_excitation / p.N_atoms;
  return {ratio, ratio >= 0.01};
}

std::vector<std::string> validate_experimental_ranges(const SystemParams& p) {
  std::vector<std::string> out;
  auto check = [&out](double v, double lo, double hi, const char* what) {
    if (v < lo || v > hi)
      out.push_back(std::string(what) + " outside the demonstrated range [" +
                    std::to_string(lo) + ", " + std::to_string(hi) + "]");
  };
  check(p.m, 1e-22, 1.9e-7, "mass (kg)");
  check(p.g0 / kTwoPi, 1.2, 9e5, "g0/2pi (Hz)");
  check(p.omega_m / kTwoPi, 9.7e3, 3.9e9, "omega_m/2pi (Hz)");
  check(p.gamma_m / kTwoPi, 1.3e-2, 3.9e4, "gamma_m/2pi (Hz)");
  check(p.kappa / kTwoPi, 2e5, 3.9e8, "kappa/2pi (Hz)");
  return out;
}

}  // namespace cqnc
