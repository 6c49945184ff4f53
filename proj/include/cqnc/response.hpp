#pragma once

#include <Eigen/Dense>

#include "cqnc/params.hpp"

namespace cqnc {

using Matrix6 = Eigen::Matrix<double, 6, 6>;
using Matrix6c = Eigen::Matrix<Complex, 6, 6>;
using Vector6 = Eigen::Matrix<double, 6, 1>;
using Vector6c = Eigen::Matrix<Complex, 6, 1>;

// Cavity quadrature coefficients: c_pm = +-kappa/2 + 2 G cos(theta),
// s_pm = +-Delta + 2 G sin(theta).
struct QuadCoeffs {
  double c_minus, c_plus, s_minus, s_plus;
};

QuadCoeffs quad_coeffs(const SystemParams& p);

// Scale used to decide when a resonance denominator is numerically a pole.
double pole_epsilon(const SystemParams& p);

// Frequency-domain response functions at angular frequency omega, Fourier
// convention d/dt -> +i omega.  chi_a_dblprime is the cavity response
// dressed by the mechanics and the ensemble through the phase-sensitive
// OPA channel; at s_plus = 0 it reduces to 1/(i omega + c_plus).
struct SusceptibilitySet {
  double omega;
  Complex chi_m;            // omega_m / (omega_m^2 - omega^2 + i omega gamma_m)
  Complex chi_d;            // 1 / (i omega + Gamma/2)
  Complex chi_d_prime;      // 1 / (1 + omega_m^2 chi_d^2)
  Complex chi_d_dblprime;   // -omega_m / ((i omega + Gamma/2)^2 + omega_m^2)
  Complex chi_a_prime;      // 1 / (i omega - c_minus)
  Complex chi_a_dblprime;   // dressed amplitude response, see above
};

SusceptibilitySet susceptibilities(const SystemParams& p, const DerivedState& d,
                                   double omega);

// Linearized drift matrix for the quadrature vector
// (dX, dP, x_a, p_a, x_d, p_d).
struct DriftMatrix {
  Matrix6 a;
  QuadCoeffs q;
};

DriftMatrix drift_matrix(const SystemParams& p, const DerivedState& d);

struct StabilityReport {
  bool stable;
  double max_real;
  double margin;          // certification threshold, scales with ||A||
  Vector6c eigenvalues;   // sorted by descending real part
};

// Hurwitz test on the drift matrix.  An eigenvalue closer to the imaginary
// axis than the eigensolver's own noise floor cannot be certified stable,
// so the verdict requires max Re < -margin with margin ~ 1e-12 ||A||_inf.
StabilityReport stability(const DriftMatrix& dm);

// Back-action cancellation residual g^2 chi_m + G'^2 chi''_d; exactly zero
// cancellation would require chi''_d = -chi_m at matched couplings.
Complex cqnc_residual(const SystemParams& p, const DerivedState& d, double omega);

}  // namespace cqnc
