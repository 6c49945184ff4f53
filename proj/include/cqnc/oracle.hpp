#pragma once

#include "cqnc/response.hpp"
#include "cqnc/spectra.hpp"

namespace cqnc {

// State-basis diagonal of the symmetrized input PSDs, i.e. each channel's
// quadrature PSD times its coupling rate, ordered to match the drift
// matrix basis (dX, dP, x_a, p_a, x_d, p_d).
struct NoiseModel {
  Vector6 psd;
};

NoiseModel vacuum_noise(const SystemParams& p,
                        ThermalModel model = ThermalModel::HighTemperature);

// Requested row of the resolvent (i omega I - A)^{-1}, computed by one
// partial-pivot LU solve of the transposed system.
Vector6c response_row(const Matrix6& a, double omega, int row);

// Output coefficients obtained from the drift matrix alone, no
// susceptibility algebra: p_a_out response to a unit excitation on each
// input channel (coupling-rate weights folded in) plus the external-force
// signal coefficient.
struct TransferRow {
  Vector6c coeff;
  Complex signal;
};

TransferRow transfer_row(const SystemParams& p, const DerivedState& d, double omega);

// Force-referred added-noise spectrum from the resolvent row and a noise
// model; the independent cross-check for every closed-form spectrum.
double oracle_spectrum(const SystemParams& p, const DerivedState& d, double omega,
                       const NoiseModel& noise);

// Empirical discrimination between the two ensemble damping conventions:
// evaluates how well the optical back-action component scales out of
// B(g) g^2 under each and reports the residuals and the winner.
struct ProbeReport {
  double residual_matched;
  double residual_twice;
  AtomDamping preferred;
  double omega;
  double g_base;
};

ProbeReport damping_convention_probe(const SystemParams& base, double omega = 0.0);

}  // namespace cqnc
