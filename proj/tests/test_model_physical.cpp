// Channel construction, the drive Hamiltonian, and the laboratory-parameter
// layer (coupling, decay rate, geometry factors, dispersive controls, thermal
// dephasing estimate).

#include <cmath>

#include "catch2/catch_amalgamated.hpp"
#include "entlab/model.hpp"
#include "entlab/physical.hpp"

using namespace entlab;
using Catch::Approx;

TEST_CASE("channel validation enforces the rate pattern") {
  REQUIRE_NOTHROW(build_channel(ChannelKind::Independent, 1.0));
  REQUIRE_NOTHROW(build_channel(ChannelKind::Collective, 1.0, 1.0));
  REQUIRE_NOTHROW(build_channel(ChannelKind::Mixed, 1.0, 0.5));

  REQUIRE_THROWS_AS(build_channel(ChannelKind::Independent, 0.0), InvalidRates);
  REQUIRE_THROWS_AS(build_channel(ChannelKind::Independent, -1.0), InvalidRates);
  // independent: no cross decay, no exchange shift
  REQUIRE_THROWS_AS(build_channel(ChannelKind::Independent, 1.0, 0.1),
                    InvalidRates);
  REQUIRE_THROWS_AS(build_channel(ChannelKind::Independent, 1.0, 0.0, 0.5),
                    InvalidRates);
  // collective: cross decay equals the single-atom rate
  REQUIRE_THROWS_AS(build_channel(ChannelKind::Collective, 1.0, 0.5),
                    InvalidRates);
  // mixed: strictly between
  REQUIRE_THROWS_AS(build_channel(ChannelKind::Mixed, 1.0, 0.0), InvalidRates);
  REQUIRE_THROWS_AS(build_channel(ChannelKind::Mixed, 1.0, 1.0), InvalidRates);
  REQUIRE_THROWS_AS(build_channel(ChannelKind::Mixed, 1.0, 1.5), InvalidRates);
}

TEST_CASE("hamiltonian carries the pairing and exchange blocks") {
  ControlParams ctrl;
  ctrl.mu1 = 0.3;
  ctrl.phi1 = 0.7;
  ctrl.mu2 = 0.2;
  ctrl.phi2 = -0.4;
  const double eta = 0.15;
  const Mat4 h = build_hamiltonian(ctrl, eta);

  REQUIRE(h.hermiticity_error() < 1e-15);
  // pairing block: <00|H|11> = mu1 e^{-i phi1}
  REQUIRE(std::abs(h(0, 3) - 0.3 * std::exp(cplx(0.0, -0.7))) < 1e-15);
  REQUIRE(std::abs(h(3, 0) - std::conj(h(0, 3))) < 1e-15);
  // exchange block: <01|H|10> = mu2 e^{+i phi2} + eta
  REQUIRE(std::abs(h(1, 2) - (0.2 * std::exp(cplx(0.0, ctrl.phi2)) + eta)) <
          1e-15);
  // no single-excitation drive terms
  REQUIRE(std::abs(h(0, 1)) == 0.0);
  REQUIRE(std::abs(h(0, 2)) == 0.0);
  REQUIRE(std::abs(h(1, 3)) == 0.0);
  REQUIRE(std::abs(h(2, 3)) == 0.0);
  REQUIRE(std::abs(h(0, 0)) == 0.0);
}

TEST_CASE("make_model drops the exchange shift for the independent channel") {
  ControlParams ctrl;
  ctrl.mu2 = 0.2;
  const auto indep = build_channel(ChannelKind::Independent, 1.0);
  const auto coll = build_channel(ChannelKind::Collective, 1.0, 1.0, 0.3);
  const Mat4 hi = make_model(ctrl, indep).hamiltonian;
  const Mat4 hc = make_model(ctrl, coll).hamiltonian;
  REQUIRE(std::abs(hi(1, 2) - cplx(0.2)) < 1e-15);        // drive only
  REQUIRE(std::abs(hc(1, 2) - cplx(0.2 + 0.3)) < 1e-15);  // drive + shift
}

TEST_CASE("coupling constant magnitude and phase") {
  // eps = dip sqrt(omega_c / (2 eps0 hbar V)) e^{i phase}
  const double dip = 1e-29, omega_c = 2.0e15, V = 1e-15, phase = 0.6;
  const cplx eps = coupling_constant(dip, omega_c, V, phase);
  const PhysicalConstants k;
  const double want =
      dip * std::sqrt(omega_c / (2.0 * k.eps0 * k.hbar * V));
  REQUIRE(std::abs(eps) == Approx(want).epsilon(1e-12));
  REQUIRE(std::arg(eps) == Approx(phase).margin(1e-12));
  REQUIRE_THROWS_AS(coupling_constant(dip, 0.0, V, 0.0), InvalidArgument);
  REQUIRE_THROWS_AS(coupling_constant(dip, omega_c, 0.0, 0.0), InvalidArgument);
}

TEST_CASE("spontaneous rate value and scaling laws") {
  const double base = spontaneous_rate(1e15, 1e-29);
  REQUIRE(base == Approx(421737.1638455239).epsilon(1e-9));
  // cubic in frequency, quadratic in dipole
  REQUIRE(spontaneous_rate(2e15, 1e-29) == Approx(8.0 * base).epsilon(1e-12));
  REQUIRE(spontaneous_rate(1e15, 2e-29) == Approx(4.0 * base).epsilon(1e-12));
  REQUIRE_THROWS_AS(spontaneous_rate(0.0, 1e-29), InvalidArgument);
}

TEST_CASE("dispersive controls from lab parameters") {
  const cplx e1 = 10.0 * std::exp(cplx(0.0, kPi / 6.0));
  const cplx e2 = 8.0 * std::exp(cplx(0.0, -kPi / 3.0));
  const ControlsResult res = effective_controls(50.0, 1000.0, e1, e2);
  REQUIRE(res.params.mu1 == Approx(0.008).epsilon(1e-12));
  REQUIRE(res.params.phi1 == Approx(kPi / 6.0).margin(1e-12));
  REQUIRE(res.params.mu2 == Approx(0.08).epsilon(1e-12));
  REQUIRE(res.params.phi2 == Approx(-kPi / 2.0).margin(1e-12));
  // |xi| = 50 < 10 x max coupling (100): exactly one validity warning
  REQUIRE(res.warnings.size() == 1);

  const ControlsResult clean = effective_controls(5000.0, 1000.0, e1, e2);
  REQUIRE(clean.warnings.empty());
  const ControlsResult marginal = effective_controls(5000.0, 50.0, e1, e2);
  REQUIRE(marginal.warnings.size() == 1);

  REQUIRE_THROWS_AS(effective_controls(50.0, 0.0, e1, e2), ZeroDetuning);
}

TEST_CASE("collective geometry factor") {
  // exact closed-form point at half-wavelength separation, orthogonal dipoles
  REQUIRE(collective_factor(kPi, kPi / 2.0) ==
          Approx(-0.15198177546350666).margin(1e-12));
  REQUIRE(collective_factor(0.5, 1.0) ==
          Approx(0.957834265691135).margin(1e-12));
  REQUIRE(collective_factor(2.0, 0.3) ==
          Approx(0.627100320724111).margin(1e-12));
  // contact limit -> 1 for any dipole angle, via the series branch
  for (double th : {0.0, 0.3, kPi / 2.0, 1.2}) {
    REQUIRE(collective_factor(1e-5, th) == Approx(1.0).margin(1e-8));
    REQUIRE(collective_factor(1e-6, th) == Approx(1.0).margin(1e-10));
  }
  // series and closed form agree at the crossover
  for (double th : {0.0, 0.7, kPi / 2.0})
    REQUIRE(collective_factor(0.99e-4, th) ==
            Approx(collective_factor(1.01e-4, th)).margin(1e-10));
  // far limit decays
  REQUIRE(std::abs(collective_factor(200.0, 0.8)) < 0.01);
  REQUIRE_THROWS_AS(collective_factor(0.0, 0.0), InvalidArgument);
}

TEST_CASE("dipole-dipole shift") {
  REQUIRE(dipole_shift(0.1, 0.0, 1.0) ==
          Approx(-1507.4812604140625).epsilon(1e-12));
  REQUIRE(dipole_shift(1.0, 0.7, 2.0) ==
          Approx(-1.9011075992771753).epsilon(1e-12));
  // near-field branch follows the 1/(kr)^3 law
  REQUIRE(dipole_shift(0.99e-3, 0.4, 1.0) * std::pow(0.99e-3, 3) ==
          Approx(dipole_shift(1.01e-3, 0.4, 1.0) * std::pow(1.01e-3, 3))
              .epsilon(1e-5));
  // scales linearly with gamma
  REQUIRE(dipole_shift(0.3, 0.2, 3.0) ==
          Approx(3.0 * dipole_shift(0.3, 0.2, 1.0)).epsilon(1e-12));
  REQUIRE_THROWS_AS(dipole_shift(-1.0, 0.0, 1.0), InvalidArgument);
}

TEST_CASE("thermal position-dephasing estimate (cold cesium trap)") {
  const DephasingEstimate est =
      estimate_position_dephasing(1.3e-4, 2.2e-25, 3.3e6, 0.9e-6);
  REQUIRE(est.delta_r == Approx(2.737083440772263e-8).epsilon(1e-9));
  REQUIRE(est.spread_ratio == Approx(0.03041203823080292).epsilon(1e-9));
  REQUIRE(est.gamma_phase == Approx(0.0182566376764147).epsilon(1e-9));
  // classical estimate self-consistent here: hbar w < kB T / 2
  REQUIRE(est.classical_ok);
  REQUIRE(est.warnings.empty());

  // a much stiffer trap pushes into the quantum regime and warns
  const DephasingEstimate stiff =
      estimate_position_dephasing(1.3e-4, 2.2e-25, 3.3e8, 0.9e-6);
  REQUIRE_FALSE(stiff.classical_ok);
  REQUIRE(stiff.warnings.size() == 1);

  REQUIRE_THROWS_AS(estimate_position_dephasing(0.0, 1.0, 1.0, 1.0),
                    InvalidArgument);
}
