#include "cqnc/response.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace cqnc {

QuadCoeffs quad_coeffs(const SystemParams& p) {
  const double c = 2.0 * p.G * std::cos(p.theta);
  const double s = 2.0 * p.G * std::sin(p.theta);
  return {-p.kappa / 2.0 + c, p.kappa / 2.0 + c, -p.Delta + s, p.Delta + s};
}

double pole_epsilon(const SystemParams& p) {
  return 1e-12 * std::max(p.omega_m, p.kappa);
}

SusceptibilitySet susceptibilities(const SystemParams& p, const DerivedState& d,
                                   double omega) {
  const double eps = pole_epsilon(p);
  SusceptibilitySet s{};
  s.omega = omega;

  // the factored difference stays exact through the resonance, where
  // omega_m^2 - omega^2 would cancel against the large squares
  const double res2 = (p.omega_m - omega) * (p.omega_m + omega);
  const Complex dm(res2, omega * p.gamma_m);
  if (std::abs(dm) < eps * eps)
    throw pole_error("mechanical response pole: omega at undamped resonance");
  s.chi_m = p.omega_m / dm;

  const Complex dd(p.Gamma / 2.0, omega);
  if (std::abs(dd) < eps) throw pole_error("ensemble response pole");
  s.chi_d = 1.0 / dd;

  const Complex dd2(p.Gamma * p.Gamma / 4.0 + res2, omega * p.Gamma);
  if (std::abs(dd2) < eps * eps)
    throw pole_error("ensemble quadrature response pole");
  s.chi_d_dblprime = -p.omega_m / dd2;
  s.chi_d_prime = dd * dd / dd2;

  const QuadCoeffs q = quad_coeffs(p);
  const Complex da(-q.c_minus, omega);
  if (std::abs(da) < eps) throw pole_error("cavity amplitude response pole");
  s.chi_a_prime = 1.0 / da;

  const Complex mix = d.g * d.g * s.chi_m + q.s_minus +
                      p.G_prime * p.G_prime * s.chi_d_dblprime;
  const Complex inv(Complex(q.c_plus, omega) - mix * s.chi_a_prime * q.s_plus);
  if (std::abs(inv) < eps) throw pole_error("dressed cavity response pole");
  s.chi_a_dblprime = 1.0 / inv;
  return s;
}

DriftMatrix drift_matrix(const SystemParams& p, const DerivedState& d) {
  const QuadCoeffs q = quad_coeffs(p);
  const double g = d.g, Gp = p.G_prime;
  const double x_d_diag =
      (p.row5_sign == Row5Sign::Damped) ? -p.Gamma / 2.0 : p.Gamma / 2.0;
  Matrix6 a;
  // clang-format off
  a <<        0.0,  p.omega_m,        0.0,       0.0,        0.0,          0.0,
       -p.omega_m, -p.gamma_m,         -g,       0.0,        0.0,          0.0,
              0.0,        0.0,  q.c_minus, q.s_plus,        0.0,          0.0,
               -g,        0.0, q.s_minus, -q.c_plus,        -Gp,          0.0,
              0.0,        0.0,        0.0,       0.0,   x_d_diag,   -p.omega_m,
              0.0,        0.0,        -Gp,       0.0,  p.omega_m, -p.Gamma / 2.0;
  // clang-format on
  return {a, q};
}

StabilityReport stability(const DriftMatrix& dm) {
  Eigen::EigenSolver<Matrix6> es(dm.a, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eigensolver did not converge on the drift matrix");
  StabilityReport r{};
  r.eigenvalues = es.eigenvalues();
  std::sort(r.eigenvalues.data(), r.eigenvalues.data() + 6,
            [](const Complex& a, const Complex& b) { return a.real() > b.real(); });
  r.max_real = r.eigenvalues[0].real();
  r.margin = 1e-12 * dm.a.cwiseAbs().rowwise().sum().maxCoeff();
  r.stable = r.max_real < -r.margin;
  return r;
}

Complex cqnc_residual(const SystemParams& p, const DerivedState& d, double omega) {
  const SusceptibilitySet s = susceptibilities(p, d, omega);
  return d.g * d.g * s.chi_m + p.G_prime * p.G_prime * s.chi_d_dblprime;
}

}  // namespace cqnc
