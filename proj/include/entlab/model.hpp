#pragma once
// Model assembly: decay-channel description, effective control parameters,
// and the interaction-picture Hamiltonian of the driven two-atom system.
//
// The master equation integrated by this library is
//
//   d rho/dt = -i [H, rho]
//              + sum_{i,j} G_ij ( L_i rho L_j^dag - {L_j^dag L_i, rho}/2 ),
//
// with L_i = sigma_minus on atom i and rate matrix
// G = [[gamma, gamma12], [gamma12, gamma]]. The three supported channels are
// Independent (gamma12 = 0), Collective (gamma12 = gamma, plus a coherent
// dipole-dipole shift eta0), and Mixed (0 < gamma12 < gamma).
//
// The effective Hamiltonian produced by the far-detuned squeezed cavity drive
// has two controls: a two-photon (pairing) term of amplitude mu1 coupling
// |00> <-> |11>, and an exchange term of amplitude mu2 coupling |01> <-> |10>:
//
//   H = mu1 ( e^{-i phi1} |00><11| + h.c. )
//     + mu2 ( e^{+i phi2} |01><10| + h.c. )
//     + eta ( |01><10| + |10><01| ).
//
// The phase convention on the mu1 term is chosen so that the stationary
// corner coherence comes out as rho_14 = |rho_14| e^{-i(phi1 - pi/2)}; the
// analytic/numeric equivalence suite pins this sign pattern.

#include <cmath>
#include <complex>

#include "entlab/errors.hpp"
#include "entlab/mat4.hpp"

namespace entlab {

enum class ChannelKind { Independent, Collective, Mixed };

struct ChannelSpec {
  ChannelKind kind = ChannelKind::Independent;
  double gamma = 1.0;    // single-atom decay rate
  double gamma12 = 0.0;  // cross-damping rate
  double eta0 = 0.0;     // coherent dipole-dipole shift (Collective/Mixed)
};

// Validate and assemble a channel description.
inline ChannelSpec build_channel(ChannelKind kind, double gamma,
                                 double gamma12 = 0.0, double eta0 = 0.0) {
  if (!(gamma > 0.0)) throw InvalidRates("gamma must be positive");
  switch (kind) {
    case ChannelKind::Independent:
      if (gamma12 != 0.0)
        throw InvalidRates("independent channel requires gamma12 == 0");
      if (eta0 != 0.0)
        throw InvalidRates("independent channel has no dipole-dipole shift");
      break;
    case ChannelKind::Collective:
      if (gamma12 != gamma)
        throw InvalidRates("collective channel requires gamma12 == gamma");
      break;
    case ChannelKind::Mixed:
      if (!(gamma12 > 0.0) || !(gamma12 < gamma))
        throw InvalidRates("mixed channel requires 0 < gamma12 < gamma");
      break;
  }
  ChannelSpec c;
  c.kind = kind;
  c.gamma = gamma;
  c.gamma12 = gamma12;
  c.eta0 = eta0;
  return c;
}

struct ControlParams {
  double mu1 = 0.0;   // two-photon (pairing) amplitude, >= 0
  double phi1 = 0.0;  // two-photon phase
  double mu2 = 0.0;   // exchange amplitude, >= 0
  double phi2 = 0.0;  // exchange phase
};

// H as documented in the header comment. `eta` is the coherent dipole-dipole
// shift added to the exchange block (zero for the independent channel).
inline Mat4 build_hamiltonian(const ControlParams& ctrl, double eta = 0.0) {
  if (ctrl.mu1 < 0.0 || ctrl.mu2 < 0.0)
    throw InvalidRates("control amplitudes must be nonnegative");
  Mat4 h;
  const cplx pairing = ctrl.mu1 * std::exp(cplx(0.0, -ctrl.phi1));
  h(0, 3) = pairing;
  h(3, 0) = std::conj(pairing);
  const cplx exchange = ctrl.mu2 * std::exp(cplx(0.0, ctrl.phi2)) + eta;
  h(1, 2) = exchange;
  h(2, 1) = std::conj(exchange);
  return h;
}

// A channel plus the Hamiltonian it dresses: everything the integrator needs.
struct ModelSpec {
  Mat4 hamiltonian;
  ChannelSpec channel;
};

inline ModelSpec make_model(const ControlParams& ctrl, const ChannelSpec& channel) {
  const double eta = (channel.kind == ChannelKind::Independent) ? 0.0 : channel.eta0;
  return ModelSpec{build_hamiltonian(ctrl, eta), channel};
}

}  // namespace entlab
