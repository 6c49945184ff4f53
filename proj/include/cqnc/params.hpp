#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "cqnc/constants.hpp"

namespace cqnc {

using Complex = std::complex<double>;

// Convention for the collective atomic decay rate when retuning for
// back-action cancellation.  TwiceMechanical sets Gamma = 2 gamma_m,
// Matched sets Gamma = gamma_m (the choice that makes the cancellation
// residual scale out of the optical back-action, see
// damping_convention_probe).
enum class AtomDamping { TwiceMechanical, Matched };

// Sign of the x_d diagonal in the drift matrix.  Damped is the sign that
// follows from the atomic Langevin equation (-Gamma/2 on both atomic
// quadratures); Antidamped flips the x_d entry to +Gamma/2 and is kept
// selectable because it produces a qualitatively different (unstable)
// dynamical system that is useful as a negative control.
enum class Row5Sign { Damped, Antidamped };

// All inputs in SI units; frequencies and rates are angular (rad/s).
// Delta is the effective cavity detuning, i.e. the detuning already
// shifted by the static optomechanical displacement; it is an input, not
// derived from a bare cavity frequency.
struct SystemParams {
  double m = 5.0e-11;                   // mechanical oscillator mass, kg
  double omega_m = kTwoPi * 300.0e3;    // mechanical frequency
  double gamma_m = kTwoPi * 30.0;       // mechanical damping rate
  double kappa = kTwoPi * 1.0e6;        // cavity linewidth
  double g0 = kTwoPi * 300.0;           // single-photon optomechanical coupling
  double P_L = 0.1;                     // drive power, W
  double omega_L = kTwoPi * 384.0e12;   // drive frequency
  double Delta = 0.0;                   // effective cavity detuning
  double G = 0.0;                       // OPA gain
  double theta = 0.0;                   // OPA pump phase, rad
  double Gamma = kTwoPi * 60.0;         // collective atomic decay rate
  double G_prime = 0.0;                 // cavity-ensemble coupling
  double T = 0.0;                       // bath temperature, K
  double N_atoms = 1.0e8;               // ensemble size
  AtomDamping atom_damping = AtomDamping::TwiceMechanical;
  Row5Sign row5_sign = Row5Sign::Damped;
};

struct DerivedState {
  double E_L;            // drive amplitude sqrt(kappa P_L / (hbar omega_L))
  Complex alpha_s;       // steady-state cavity amplitude
  double X_s;            // static mechanical displacement (quadrature units)
  Complex d_s;           // steady-state collective atomic amplitude
  double g;              // linearized optomechanical coupling sqrt(2) g0 |alpha_s|
  double Q;              // mechanical quality factor omega_m / gamma_m
  double n_excitation;   // |d_s|^2, collective atomic excitation number
};

struct pole_error : std::domain_error {
  using std::domain_error::domain_error;
};

// Reduce an angle to [-pi, pi).
double reduce_angle(double theta);

// Throws std::invalid_argument on non-finite or out-of-domain values.
void validate(const SystemParams& p);

// Baseline parameter set: the membrane-in-cavity numbers above with the
// ensemble decoupled (G_prime = 0).  Identical to SystemParams{}.
SystemParams baseline();

// Baseline plus the back-action-cancellation tuning: Gamma set per the
// atom_damping convention and G_prime solved so that G_prime equals the
// drive-dependent coupling g (fixed point of the steady state).
SystemParams cqnc_defaults();

// Steady state for fixed G_prime (no self-consistent iteration).
DerivedState derive(const SystemParams& p);

// Smallest drive power that realizes the requested linearized coupling,
// exact inversion of derive() at fixed G_prime.
double power_for_coupling(const SystemParams& p, double g_target);

// Convenience: steady state with the drive power chosen so derived.g is
// g_target.
DerivedState derive_with_coupling(SystemParams p, double g_target);

// Set Gamma per the damping convention and solve the matched-coupling
// fixed point G_prime = g(P_L, G_prime) by bisection plus Newton polish.
SystemParams cqnc_configure(SystemParams p);

struct ExcitationCheck {
  double ratio;   // n_excitation / N_atoms
  bool warn;      // true when the holstein-primakoff expansion is strained
};

ExcitationCheck validate_low_excitation(const SystemParams& p,
                                        const DerivedState& d);

// One message per parameter outside the envelope of published
// optomechanics experiments; empty means everything is in range.
std::vector<std::string> validate_experimental_ranges(const SystemParams& p);

}  // namespace cqnc
