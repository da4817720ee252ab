// Master-equation integration: generator structure, closed-form decay
// solutions, fixed vs adaptive stepping, and the state-repair policy.

#include <cmath>
#include <random>

#include "catch2/catch_amalgamated.hpp"
#include "entlab/dynamics.hpp"
#include "entlab/entangle.hpp"
#include "entlab/states.hpp"

using namespace entlab;
using Catch::Approx;

namespace {

std::mt19937 rng(20240814u);

Mat4 random_density() {
  std::normal_distribution<double> n;
  Mat4 g;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g(i, j) = cplx(n(rng), n(rng));
  Mat4 rho = g * g.adjoint();
  rho *= cplx(1.0 / rho.trace().real(), 0.0);
  return rho;
}

ModelSpec decay_only(ChannelKind kind, double gamma) {
  const double g12 = (kind == ChannelKind::Collective) ? gamma : 0.0;
  return make_model(ControlParams{}, build_channel(kind, gamma, g12));
}

}  // namespace

TEST_CASE("generator is trace-free and hermiticity-preserving") {
  ControlParams ctrl;
  ctrl.mu1 = 0.4;
  ctrl.phi1 = 1.1;
  ctrl.mu2 = 0.2;
  const auto models = {
      make_model(ctrl, build_channel(ChannelKind::Independent, 1.0)),
      make_model(ctrl, build_channel(ChannelKind::Collective, 1.0, 1.0, 0.3)),
      make_model(ctrl, build_channel(ChannelKind::Mixed, 1.0, 0.6))};
  for (const ModelSpec& m : models) {
    for (int trial = 0; trial < 25; ++trial) {
      const Mat4 d = lindblad_rhs(m, random_density());
      REQUIRE(std::abs(d.trace()) < 1e-12);
      REQUIRE(d.hermiticity_error() < 1e-12);
    }
  }
}

TEST_CASE("independent decay from the doubly excited state") {
  // closed form: populations (1-e)^2, e(1-e), e(1-e), e^2 with e = e^{-gamma t}
  Mat4 rho0;
  rho0(3, 3) = 1.0;
  IntegrationOptions opt;
  opt.dt = 0.002;
  opt.sample_every = 500;  // sample once per unit time
  const Trajectory traj =
      propagate(decay_only(ChannelKind::Independent, 1.0), rho0, 1.0, opt);
  const Mat4& rho = traj.samples.back().rho;
  REQUIRE(traj.samples.back().t == Approx(1.0).margin(1e-12));
  REQUIRE(rho(3, 3).real() == Approx(0.1353352832366127).margin(1e-9));
  REQUIRE(rho(2, 2).real() == Approx(0.23254415793482963).margin(1e-9));
  REQUIRE(rho(1, 1).real() == Approx(0.23254415793482963).margin(1e-9));
  REQUIRE(rho(0, 0).real() == Approx(0.39957640089372803).margin(1e-9));
}

TEST_CASE("independent decay of the corner coherence") {
  // from the Bell corner state the coherence traces e^{-gamma t} and the
  // concurrence e^{-2 gamma t}
  IntegrationOptions opt;
  opt.dt = 0.002;
  opt.sample_every = 250;
  const Trajectory traj =
      propagate(decay_only(ChannelKind::Independent, 1.0), bell_phi_plus(),
                1.0, opt);
  for (const TrajectorySample& s : traj.samples) {
    REQUIRE(std::abs(s.rho(0, 3)) ==
            Approx(0.5 * std::exp(-s.t)).margin(1e-9));
    REQUIRE(concurrence(s.rho) ==
            Approx(std::exp(-2.0 * s.t)).margin(1e-8));
  }
}

TEST_CASE("ground state is stationary for all channels") {
  for (ChannelKind kind :
       {ChannelKind::Independent, ChannelKind::Collective, ChannelKind::Mixed}) {
    const double g12 = (kind == ChannelKind::Collective)
                           ? 1.0
                           : (kind == ChannelKind::Mixed ? 0.5 : 0.0);
    const ModelSpec m = make_model(ControlParams{}, build_channel(kind, 1.0, g12));
    REQUIRE(lindblad_rhs(m, ground_state()).max_abs() < 1e-14);
    const Trajectory traj = propagate(m, ground_state(), 5.0);
    REQUIRE(max_abs_diff(traj.samples.back().rho, ground_state()) < 1e-12);
  }
}

TEST_CASE("singlet is dark under collective decay") {
  const ModelSpec m = decay_only(ChannelKind::Collective, 1.0);
  REQUIRE(lindblad_rhs(m, singlet_projector()).max_abs() < 1e-14);
  IntegrationOptions opt;
  opt.dt = 0.01;
  opt.sample_every = 100;
  const Trajectory traj = propagate(m, singlet_projector(), 10.0, opt);
  REQUIRE(max_abs_diff(traj.samples.back().rho, singlet_projector()) < 1e-12);
  REQUIRE(concurrence(traj.samples.back().rho) == Approx(1.0).margin(1e-10));
  // but the independent channel destroys it
  const Trajectory ind = propagate(decay_only(ChannelKind::Independent, 1.0),
                                   singlet_projector(), 10.0, opt);
  REQUIRE(concurrence(ind.samples.back().rho) < 1e-4);
}

TEST_CASE("fixed-step integration converges at fourth order") {
  ControlParams ctrl;
  ctrl.mu1 = 0.4;
  const ModelSpec driven =
      make_model(ctrl, build_channel(ChannelKind::Independent, 1.0));
  auto end_state = [&](double dt) {
    IntegrationOptions opt;
    opt.dt = dt;
    opt.sample_every = 1 << 30;
    return propagate(driven, bell_phi_plus(), 2.0, opt).samples.back().rho;
  };
  const Mat4 fine = end_state(0.0005);
  const double err_a = max_abs_diff(end_state(0.04), fine);
  const double err_b = max_abs_diff(end_state(0.02), fine);
  // halving the step should cut the error by about 2^4
  REQUIRE(err_b < err_a / 10.0);
  REQUIRE(err_a < 5e-6);
}

TEST_CASE("adaptive stepping matches fixed stepping") {
  ControlParams ctrl;
  ctrl.mu1 = 0.6;
  ctrl.phi1 = 0.8;
  const ModelSpec m =
      make_model(ctrl, build_channel(ChannelKind::Collective, 1.0, 1.0, 0.2));
  IntegrationOptions fixed;
  fixed.dt = 0.001;
  fixed.sample_every = 1 << 30;
  IntegrationOptions adapt;
  adapt.mode = StepMode::Adaptive;
  adapt.tol = 1e-12;
  adapt.sample_every = 1;
  const Mat4 a = propagate(m, skewed_corner_mix(), 4.0, fixed).samples.back().rho;
  const Trajectory tb = propagate(m, skewed_corner_mix(), 4.0, adapt);
  REQUIRE(max_abs_diff(a, tb.samples.back().rho) < 1e-8);
  REQUIRE(tb.samples.back().t == Approx(4.0).margin(1e-9));
}

TEST_CASE("integration rejects invalid input") {
  const ModelSpec m = decay_only(ChannelKind::Independent, 1.0);
  REQUIRE_THROWS_AS(propagate(m, ground_state(), -1.0), InvalidArgument);
  IntegrationOptions opt;
  opt.sample_every = 0;
  REQUIRE_THROWS_AS(propagate(m, ground_state(), 1.0, opt), InvalidArgument);
  Mat4 bad = Mat4::diag(2.0, 0.0, 0.0, 0.0);
  REQUIRE_THROWS_AS(propagate(m, bad, 1.0), InvalidState);
}

TEST_CASE("trajectory samples are always physical") {
  ControlParams ctrl;
  ctrl.mu1 = 1.5;
  ctrl.mu2 = 0.7;
  ctrl.phi1 = 2.0;
  const ModelSpec m =
      make_model(ctrl, build_channel(ChannelKind::Mixed, 1.0, 0.8, 0.4));
  IntegrationOptions opt;
  opt.dt = 0.005;
  opt.sample_every = 50;
  const Trajectory traj = propagate(m, bell_one_excitation_mix(), 10.0, opt);
  REQUIRE(traj.samples.size() > 10);
  for (const TrajectorySample& s : traj.samples) {
    REQUIRE(std::abs(s.rho.trace().real() - 1.0) < 1e-12);
    REQUIRE(s.rho.hermiticity_error() < 1e-12);
    const HermitianEig4 e = eig4_hermitian(s.rho);
    REQUIRE(e.values[0] > -1e-9);
  }
}

TEST_CASE("stationary solve matches long-time integration (independent)") {
  ControlParams ctrl;
  ctrl.mu1 = 0.309;
  const ModelSpec m =
      make_model(ctrl, build_channel(ChannelKind::Independent, 1.0));
  const NumericStationary ns = stationary_numeric(m);
  REQUIRE(ns.residual < 1e-9);
  IntegrationOptions opt;
  opt.dt = 0.01;
  opt.sample_every = 1 << 30;
  const Trajectory traj = propagate(m, ground_state(), 60.0, opt);
  REQUIRE(max_abs_diff(traj.samples.back().rho, ns.rho) < 1e-9);
}

TEST_CASE("stationary solve handles the mixed channel") {
  ControlParams ctrl;
  ctrl.mu1 = 0.5;
  ctrl.mu2 = 0.3;
  ctrl.phi2 = 0.9;
  const ModelSpec m =
      make_model(ctrl, build_channel(ChannelKind::Mixed, 1.0, 0.4, 0.1));
  const NumericStationary ns = stationary_numeric(m);
  REQUIRE(ns.residual < 1e-9);
  REQUIRE_NOTHROW(DensityMatrix::checked(ns.rho));
}

TEST_CASE("collective stationary state requires and respects rho0") {
  const ModelSpec m = decay_only(ChannelKind::Collective, 1.0);
  REQUIRE_THROWS_AS(stationary_numeric(m), InvalidArgument);

  // kappa is conserved: relaxing any initial state lands on the mixture
  // (1 - kappa) singlet + kappa ground
  const Mat4 rho0 = bell_one_excitation_mix();  // kappa = 7/8
  const NumericStationary ns = stationary_numeric(m, rho0);
  const Mat4 want = 0.125 * singlet_projector() + 0.875 * ground_state();
  REQUIRE(max_abs_diff(ns.rho, want) < 1e-8);
  REQUIRE(ns.relaxation_time > 0.0);
}
