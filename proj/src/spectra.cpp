#include "cqnc/spectra.hpp"

#include <cmath>

namespace cqnc {

double thermal_psd(const SystemParams& p, ThermalModel model) {
  if (p.T == 0)
    return model == ThermalModel::QuantumExact ? 0.5 : 0.0;
  const double x = kBoltzmann * p.T / (kHbar * p.omega_m);
  return model == ThermalModel::QuantumExact ? 0.5 / std::tanh(0.5 / x) : x;
}

NoiseTransfer noise_transfer(const SystemParams& p, const DerivedState& d,
                             double omega) {
  const SusceptibilitySet s = susceptibilities(p, d, omega);
  const QuadCoeffs q = quad_coeffs(p);
  const double g = d.g, Gp = p.G_prime;
  const Complex mix = g * g * s.chi_m + q.s_minus + Gp * Gp * s.chi_d_dblprime;
  NoiseTransfer t{};
  t.omega = omega;
  t.signal = -g * s.chi_m * s.chi_a_dblprime * std::sqrt(p.gamma_m * p.kappa);
  t.c_xa = s.chi_a_dblprime * mix * p.kappa * s.chi_a_prime;
  t.c_pa = p.kappa * s.chi_a_dblprime - 1.0;
  const Complex ens = s.chi_a_dblprime * Gp * s.chi_d_dblprime *
                      std::sqrt(p.kappa * p.Gamma);
  t.c_pd = -ens;
  t.c_xd = ens / (p.omega_m * s.chi_d);
  return t;
}

namespace {

double signal_power(const NoiseTransfer& t) {
  const double s2 = std::norm(t.signal);
  if (s2 < 1e-250)
    throw pole_error("force transfer vanishes: the external force is unmeasurable at g = 0");
  return s2;
}

}  // namespace

double s_add_exact(const SystemParams& p, const DerivedState& d, double omega,
                   ThermalModel model) {
  const NoiseTransfer t = noise_transfer(p, d, omega);
  const double vac = std::norm(t.c_xa) + std::norm(t.c_pa) +
                     std::norm(t.c_xd) + std::norm(t.c_pd);
  return thermal_psd(p, model) + 0.5 * vac / signal_power(t);
}

namespace {

double chi_m_mod(const SystemParams& p, double omega) {
  const Complex dm((p.omega_m - omega) * (p.omega_m + omega), omega * p.gamma_m);
  const double eps = pole_epsilon(p);
  if (std::abs(dm) < eps * eps)
    throw pole_error("mechanical response pole: omega at undamped resonance");
  return p.omega_m / std::abs(dm);
}

// Shared scaffolding of the two broadband closed forms: thermal + a shot
// numerator over g^2 |chi_m|^2 gamma_m kappa + an ensemble floor term.
double broadband(const SystemParams& p, const DerivedState& d, double omega,
                 ThermalModel model, bool dc_calibrated) {
  if (d.g == 0)
    throw pole_error("force transfer vanishes: the external force is unmeasurable at g = 0");
  const QuadCoeffs q = quad_coeffs(p);
  if (std::abs(q.c_minus) < pole_epsilon(p))
    throw pole_error("cavity amplitude pole: c_minus vanishes");
  const double chi = chi_m_mod(p, omega);
  const double denom = d.g * d.g * chi * chi * p.gamma_m * p.kappa;
  const double ratio = q.s_minus / q.c_minus;
  const double c_lead = dc_calibrated ? q.c_minus : q.c_plus;
  const double shot_num = [&] {
    const double a = c_lead + q.s_plus * ratio;
    return a * a + p.kappa * p.kappa * ratio * ratio;
  }();
  const double ens = (omega * omega + p.omega_m * p.omega_m + p.Gamma * p.Gamma / 4.0) /
                     (p.omega_m * p.omega_m);
  const double th = thermal_psd(p, model);
  if (dc_calibrated)
    return th + 0.5 * shot_num / denom + 0.5 * (p.Gamma / p.gamma_m) * ens;
  return th + shot_num / denom + 0.5 * ens;
}

}  // namespace

double s_add_approx(const SystemParams& p, const DerivedState& d, double omega,
                    ThermalModel model) {
  return broadband(p, d, omega, model, false);
}

double s_add_lowfreq(const SystemParams& p, const DerivedState& d, double omega,
                     ThermalModel model) {
  return broadband(p, d, omega, model, true);
}

double s_standard(const SystemParams& p, double g, double omega, double T) {
  if (g <= 0) throw pole_error("shot noise diverges at g = 0");
  const double chi = chi_m_mod(p, omega);
  const double th = kBoltzmann * T / (kHbar * p.omega_m);
  return th + 0.5 * ((p.kappa / p.gamma_m) / (4.0 * g * g * chi * chi) +
                     4.0 * g * g / (p.kappa * p.gamma_m));
}

double s_standard_opa(const SystemParams& p, double g, double omega, double T) {
  if (g <= 0) throw pole_error("shot noise diverges at g = 0");
  const double edge = p.kappa - 4.0 * p.G;
  if (std::abs(edge) < pole_epsilon(p))
    throw pole_error("back-action term diverges at G = kappa/4");
  const double chi = chi_m_mod(p, omega);
  const double th = kBoltzmann * T / (kHbar * p.omega_m);
  const double half_edge = p.kappa / 2.0 - 2.0 * p.G;
  return th +
         0.5 * half_edge * half_edge / (g * g * chi * chi * p.gamma_m * p.kappa) +
         2.0 * g * g * p.kappa / (p.gamma_m * edge * edge);
}

double s_sql(const SystemParams& p, double omega) {
  return 1.0 / (p.gamma_m * chi_m_mod(p, omega));
}

double s_cqnc_floor(const SystemParams& p, double omega) {
  return 0.5 * (omega * omega + p.omega_m * p.omega_m + p.Gamma * p.Gamma / 4.0) /
         (p.omega_m * p.omega_m);
}

double g_opt_standard(const SystemParams& p, double omega) {
  return std::sqrt(p.kappa / (4.0 * chi_m_mod(p, omega)));
}

double g_opt_opa(const SystemParams& p, double omega) {
  return std::abs(p.kappa - 4.0 * p.G) / (2.0 * std::sqrt(p.kappa * chi_m_mod(p, omega)));
}

double to_absolute_units(const SystemParams& p, double s_normalized) {
  return s_normalized * kHbar * p.m * p.omega_m * p.gamma_m;
}

}  // namespace cqnc
