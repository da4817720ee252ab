#pragma once
// Physical-parameter layer: maps laboratory quantities (dipole moments, cavity
// geometry, detunings, squeezing strength, trap temperature) onto the
// dimensionless model parameters used by the dynamics layer.

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "entlab/errors.hpp"
#include "entlab/model.hpp"

namespace entlab {

// CODATA values, SI units.
struct PhysicalConstants {
  double hbar = 1.054571817e-34;   // J s
  double eps0 = 8.8541878128e-12;  // F / m
  double c = 2.99792458e8;         // m / s
  double kB = 1.380649e-23;        // J / K
};

// Atom-cavity coupling for a dipole moment projection `dip` (C m, along the
// mode polarization), mode frequency omega_c (rad/s), mode volume V (m^3), and
// accumulated propagation phase k.r (rad):
//   eps = dip * sqrt(omega_c / (2 eps0 hbar V)) * e^{i k.r}   [rad/s]
inline cplx coupling_constant(double dip, double omega_c, double mode_volume,
                              double phase, const PhysicalConstants& k = {}) {
  if (!(omega_c > 0.0) || !(mode_volume > 0.0))
    throw InvalidArgument("coupling_constant: omega_c and V must be positive");
  const double mag =
      dip * std::sqrt(omega_c / (2.0 * k.eps0 * k.hbar * mode_volume));
  return mag * std::exp(cplx(0.0, phase));
}

// Free-space spontaneous emission rate of a dipole transition:
//   Gamma = omega_a^3 dip^2 / (3 pi eps0 hbar c^3)   [1/s]
inline double spontaneous_rate(double omega_a, double dip,
                               const PhysicalConstants& k = {}) {
  if (!(omega_a > 0.0)) throw InvalidArgument("spontaneous_rate: omega_a must be positive");
  return omega_a * omega_a * omega_a * dip * dip /
         (3.0 * kPi * k.eps0 * k.hbar * k.c * k.c * k.c);
}

struct ControlsResult {
  ControlParams params;
  std::vector<std::string> warnings;  // adiabatic-elimination validity notes
};

// Effective control parameters of the dispersive (far-detuned) regime.
// Inputs: squeezing drive strength xi, cavity-atom detuning delta, and the two
// atom-cavity couplings (all rates, rad/s; xi and eps_i may be complex).
// Mapping:
//   mu1 e^{-i phi1} = 2 xi eps1 eps2 / delta^2
//   mu2 e^{-i phi2} = eps1 conj(eps2) / delta
// The amplitudes are returned nonnegative with the phases carrying the signs.
// Validity of the elimination requires |delta| >> |eps_i| and |xi| >> |eps_i|;
// falling below a 10x margin is reported as a warning, not an error.
inline ControlsResult effective_controls(cplx xi, double delta, cplx eps1,
                                         cplx eps2) {
  if (delta == 0.0)
    throw ZeroDetuning("effective_controls: cavity-atom detuning is zero");
  ControlsResult out;
  const cplx pairing = 2.0 * xi * eps1 * eps2 / (delta * delta);
  const cplx exchange = eps1 * std::conj(eps2) / delta;
  out.params.mu1 = std::abs(pairing);
  out.params.phi1 = (out.params.mu1 > 0.0) ? -std::arg(pairing) : 0.0;
  out.params.mu2 = std::abs(exchange);
  out.params.phi2 = (out.params.mu2 > 0.0) ? -std::arg(exchange) : 0.0;

  const double eps_scale = std::max(std::abs(eps1), std::abs(eps2));
  if (std::abs(delta) < 10.0 * eps_scale)
    out.warnings.push_back(
        "detuning is less than 10x the atom-cavity coupling; the dispersive "
        "elimination is marginal");
  if (std::abs(xi) < 10.0 * eps_scale)
    out.warnings.push_back(
        "squeezing drive is less than 10x the atom-cavity coupling; the "
        "two-photon dominance assumption is marginal");
  return out;
}

// Geometric factor of the collective decay rate for interatomic separation
// phase x = k0 * r12 > 0 and angle theta between the transition dipoles and
// the separation axis:
//   F(x, theta) = (3/2) { (1 - 3 cos^2 theta)(cos x / x^2 - sin x / x^3)
//                         + sin^2 theta * sin x / x }
// F -> 1 as x -> 0 (evaluated by series below the crossover to avoid
// cancellation) and -> 0 as x -> infinity; gamma12 = gamma * F.
inline double collective_factor(double x, double theta) {
  if (!(x > 0.0)) throw InvalidArgument("collective_factor: x must be positive");
  const double c2 = std::cos(theta) * std::cos(theta);
  const double s2 = 1.0 - c2;
  const double aniso = 1.0 - 3.0 * c2;
  if (x < 1e-4) {
    // cos x / x^2 - sin x / x^3 = -1/3 + x^2/30 + O(x^4)
    // sin x / x = 1 - x^2/6 + O(x^4)
    return 1.5 * (aniso * (-1.0 / 3.0 + x * x / 30.0) +
                  s2 * (1.0 - x * x / 6.0));
  }
  return 1.5 * (aniso * (std::cos(x) / (x * x) - std::sin(x) / (x * x * x)) +
                s2 * std::sin(x) / x);
}

// Coherent dipole-dipole shift accompanying the collective decay:
//   eta(x, theta) = (3 gamma / 4) { (1 - 3 cos^2 theta)(sin x / x^2 + cos x / x^3)
//                                   - sin^2 theta * cos x / x }
// Below x = 1e-3 the dominant 1/x^3 static term is used:
//   eta -> (3 gamma / 4) (1 - 3 cos^2 theta) / x^3.
inline double dipole_shift(double x, double theta, double gamma) {
  if (!(x > 0.0)) throw InvalidArgument("dipole_shift: x must be positive");
  const double c2 = std::cos(theta) * std::cos(theta);
  const double s2 = 1.0 - c2;
  const double aniso = 1.0 - 3.0 * c2;
  if (x < 1e-3) return 0.75 * gamma * aniso / (x * x * x);
  return 0.75 * gamma *
         (aniso * (std::sin(x) / (x * x) + std::cos(x) / (x * x * x)) -
          s2 * std::cos(x) / x);
}

struct DephasingEstimate {
  double delta_r = 0.0;      // rms thermal position spread (m)
  double spread_ratio = 0.0; // delta_r / lambda
  double gamma_phase = 0.0;  // accumulated phase variance rate coefficient
  bool classical_ok = true;  // thermal-spread estimate self-consistent
  std::vector<std::string> warnings;
};

// Thermal position spread of a trapped atom and the resulting corner-coherence
// dephasing exponent. For a harmonic trap of frequency omega_trap (rad/s),
// effective temperature T_eff (K), atomic mass m (kg), and optical wavelength
// lambda (m):
//   delta_r     = sqrt(kB T_eff / (m omega_trap^2))
//   gamma_phase = 2 pi^2 (delta_r / lambda)^2
// The classical equipartition estimate needs kB T_eff >~ 2 hbar omega_trap;
// the quantum ground-state spread dominating (hbar omega > kB T / 2) is
// flagged as a warning.
inline DephasingEstimate estimate_position_dephasing(
    double t_eff, double mass, double omega_trap, double lambda,
    const PhysicalConstants& k = {}) {
  if (!(t_eff > 0.0) || !(mass > 0.0) || !(omega_trap > 0.0) || !(lambda > 0.0))
    throw InvalidArgument(
        "estimate_position_dephasing: temperature, mass, trap frequency, and "
        "wavelength must be positive");
  DephasingEstimate out;
  out.delta_r = std::sqrt(k.kB * t_eff / (mass * omega_trap * omega_trap));
  out.spread_ratio = out.delta_r / lambda;
  out.gamma_phase = 2.0 * kPi * kPi * out.spread_ratio * out.spread_ratio;
  if (k.hbar * omega_trap > 0.5 * k.kB * t_eff) {
    out.classical_ok = false;
    out.warnings.push_back(
        "hbar*omega_trap exceeds kB*T_eff/2; the classical thermal-spread "
        "estimate underestimates the zero-point contribution");
  }
  return out;
}

}  // namespace entlab
