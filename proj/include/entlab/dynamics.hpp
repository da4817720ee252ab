#pragma once
// Time evolution of the driven two-atom system.
//
// Two equivalent engines are provided and cross-checked in the tests:
//   * lindblad_rhs / propagate — the master equation in the full 4x4 density
//     matrix representation (any channel).
//   * coherence_rhs / propagate_coherence — the same dynamics as a real
//     affine ODE dm/dt = A m + g on the 15-component coherence vector
//     (independent and collective channels; the mixed channel is only served
//     by the density-matrix engine).
// plus stationary-state solvers (direct linear solve where the generator is
// regular, relaxation where a conserved quantity makes it singular).

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <vector>

#include "entlab/basis.hpp"
#include "entlab/density.hpp"
#include "entlab/errors.hpp"
#include "entlab/model.hpp"

namespace entlab {

// Cross-damping actually applied for a channel, from its kind.
inline double effective_gamma12(const ChannelSpec& c) {
  switch (c.kind) {
    case ChannelKind::Independent:
      return 0.0;
    case ChannelKind::Collective:
      return c.gamma;
    case ChannelKind::Mixed:
      return c.gamma12;
  }
  return 0.0;
}

// Fastest rate in the model; sets integration step heuristics.
inline double rate_scale(const ModelSpec& m) {
  return std::max({m.channel.gamma, std::abs(m.channel.eta0),
                   m.hamiltonian.max_abs(), 1e-300});
}

// Right-hand side of the master equation
//   d rho/dt = -i [H, rho]
//              + sum_{i,j} G_ij ( L_i rho L_j^dag - {L_j^dag L_i, rho}/2 ),
// G = [[gamma, gamma12], [gamma12, gamma]], L_i = sigma_minus on atom i.
inline Mat4 lindblad_rhs(const ModelSpec& m, const Mat4& rho) {
  static const Mat4 L1 = on_atom1(sigma_minus());
  static const Mat4 L2 = on_atom2(sigma_minus());
  static const Mat4 L1d = L1.adjoint();
  static const Mat4 L2d = L2.adjoint();
  static const Mat4 N1 = L1d * L1;        // excited-state projector, atom 1
  static const Mat4 N2 = L2d * L2;        // excited-state projector, atom 2
  static const Mat4 X12 = L2d * L1;       // cross products for the
  static const Mat4 X21 = L1d * L2;       // correlated-decay terms

  const double g = m.channel.gamma;
  const double g12 = effective_gamma12(m.channel);

  Mat4 out = cplx(0.0, -1.0) * commutator(m.hamiltonian, rho);
  out += g * (L1 * rho * L1d - 0.5 * anticommutator(N1, rho));
  out += g * (L2 * rho * L2d - 0.5 * anticommutator(N2, rho));
  if (g12 != 0.0) {
    out += g12 * (L1 * rho * L2d - 0.5 * anticommutator(X12, rho));
    out += g12 * (L2 * rho * L1d - 0.5 * anticommutator(X21, rho));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Runge-Kutta propagation.
// ---------------------------------------------------------------------------

// One classical RK4 step for any state type with +, scalar *.
template <class State, class Rhs>
State rk4_step(const Rhs& f, const State& y, double h) {
  const State k1 = f(y);
  const State k2 = f(y + (0.5 * h) * k1);
  const State k3 = f(y + (0.5 * h) * k2);
  const State k4 = f(y + h * k3);
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

enum class StepMode { Fixed, Adaptive };

struct IntegrationOptions {
  double dt = 0.0;        // step size (fixed) / initial step (adaptive); 0 = auto
  StepMode mode = StepMode::Fixed;
  double tol = 1e-10;     // adaptive: local error bound per step (max-abs)
  int sample_every = 1;   // record every k-th step; the final state is always recorded
  StateTolerances state_tol{};
};

struct TrajectorySample {
  double t = 0.0;
  Mat4 rho;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  long steps = 0;             // accepted steps
  long rejected = 0;          // adaptive rejections
  long renormalizations = 0;  // trace drifts repaired
  long clips = 0;             // eigenvalue floors applied
};

namespace detail {

// Validate/repair a state produced by the integrator: symmetrize below the
// Hermiticity tolerance, renormalize tolerable trace drift, floor tolerable
// negative eigenvalues; anything worse throws.
inline Mat4 repair_state(Mat4 rho, const StateTolerances& tol, Trajectory& meta) {
  if (rho.hermiticity_error() > tol.hermiticity)
    throw NonHermitianInput("integration produced a non-Hermitian state");
  rho = 0.5 * (rho + rho.adjoint());

  const double tr = rho.trace().real();
  if (std::abs(tr - 1.0) > tol.trace)
    throw InvalidState("integration trace drift exceeds tolerance");
  if (tr != 1.0) {
    rho *= cplx(1.0 / tr, 0.0);
    if (std::abs(tr - 1.0) > 1e-15) ++meta.renormalizations;
  }

  const HermitianEig4 e = eig4_hermitian(rho);
  if (e.values[0] < tol.eig_floor)
    throw PositivityLoss("integration produced an unphysical state");
  if (e.values[0] < 0.0) {
    rho = clip_to_physical(rho, tol.eig_floor);
    ++meta.clips;
  }
  return rho;
}

}  // namespace detail

// Integrate the master equation from rho0 over [0, t_max]. The initial state
// is validated; every recorded sample is validated and, within tolerance,
// repaired before being stored and propagated further.
inline Trajectory propagate(const ModelSpec& model, const Mat4& rho0,
                            double t_max, const IntegrationOptions& opt = {}) {
  if (!(t_max >= 0.0)) throw InvalidArgument("propagate: t_max must be >= 0");
  if (opt.sample_every < 1)
    throw InvalidArgument("propagate: sample_every must be >= 1");

  const auto f = [&model](const Mat4& r) { return lindblad_rhs(model, r); };
  const double scale = rate_scale(model);

  Trajectory traj;
  Mat4 rho = DensityMatrix::checked(rho0, opt.state_tol).rho();
  traj.samples.push_back({0.0, rho});
  if (t_max == 0.0) return traj;

  if (opt.mode == StepMode::Fixed) {
    double dt = (opt.dt > 0.0) ? opt.dt : 0.01 / scale;
    dt = std::min(dt, t_max);
    const long steps = static_cast<long>(std::ceil(t_max / dt - 1e-9));
    dt = t_max / static_cast<double>(steps);
    for (long k = 1; k <= steps; ++k) {
      rho = rk4_step(f, rho, dt);
      if (k % opt.sample_every == 0 || k == steps) {
        rho = detail::repair_state(rho, opt.state_tol, traj);
        traj.samples.push_back({static_cast<double>(k) * dt, rho});
      }
      ++traj.steps;
    }
    return traj;
  }

  // Adaptive step doubling: one full step vs two half steps; the difference
  // estimates the local error of the half-step result (RK4: ~err/15).
  double h = (opt.dt > 0.0) ? opt.dt : 0.01 / scale;
  const double h_min = 1e-12 / scale;
  double t = 0.0;
  long accepted = 0;
  while (t < t_max * (1.0 - 1e-15)) {
    h = std::min(h, t_max - t);
    const Mat4 full = rk4_step(f, rho, h);
    const Mat4 half = rk4_step(f, rk4_step(f, rho, 0.5 * h), 0.5 * h);
    const double err = max_abs_diff(full, half) / 15.0;
    if (err <= opt.tol) {
      t += h;
      rho = half + (1.0 / 15.0) * (half - full);  // local extrapolation
      ++traj.steps;
      ++accepted;
      const bool last = t >= t_max * (1.0 - 1e-15);
      if (accepted % opt.sample_every == 0 || last) {
        rho = detail::repair_state(rho, opt.state_tol, traj);
        traj.samples.push_back({t, rho});
      }
      h *= std::min(4.0, 0.9 * std::pow(opt.tol / std::max(err, 1e-300), 0.2));
    } else {
      ++traj.rejected;
      h *= std::max(0.1, 0.9 * std::pow(opt.tol / err, 0.2));
    }
    if (h < h_min)
      throw StepUnderflow("adaptive integrator step fell below the minimum");
  }
  return traj;
}

// ---------------------------------------------------------------------------
// Coherence-vector engine.
// ---------------------------------------------------------------------------

// The dynamics as a real affine system dm/dt = A m + g. For the independent
// and collective channels the generator block-decouples: the four pairing
// components and the three population-like components (rows/cols 0-3, 12-14)
// close among themselves under the drive, and the eight single-excitation
// coherences (rows/cols 4-11) evolve autonomously and are never sourced.
struct CoherenceGenerator {
  std::array<std::array<double, 15>, 15> A{};
  std::array<double, 15> g{};

  CoherenceVector apply(const CoherenceVector& m) const {
    CoherenceVector out;
    for (int i = 0; i < 15; ++i) {
      double s = g[static_cast<size_t>(i)];
      const auto& row = A[static_cast<size_t>(i)];
      for (int j = 0; j < 15; ++j) s += row[static_cast<size_t>(j)] * m[j];
      out[i] = s;
    }
    return out;
  }
};

// Build the affine generator for the independent or collective channel.
// The pairing/population coefficients are written out explicitly — they carry
// the physics (drive rotations, decay contractions, the ground-state source,
// and the correlated-decay feeding terms); the autonomous single-excitation
// block is obtained by projecting the master equation onto the corresponding
// basis operators.
inline CoherenceGenerator build_coherence_generator(const ControlParams& ctrl,
                                                    const ChannelSpec& channel) {
  if (channel.kind == ChannelKind::Mixed)
    throw UnsupportedChannel(
        "coherence-vector dynamics cover the independent and collective "
        "channels; use the density-matrix engine for mixed damping");
  if (ctrl.mu1 < 0.0 || ctrl.mu2 < 0.0)
    throw InvalidRates("control amplitudes must be nonnegative");

  const double gamma = channel.gamma;
  const bool collective = (channel.kind == ChannelKind::Collective);
  const double eta = collective ? channel.eta0 : 0.0;

  // Drive coefficients: the pairing drive enters through 2 mu1 e^{+-i phi1},
  // the exchange block through 2 (mu2 e^{-i phi2} + eta).
  const double u1 = 2.0 * ctrl.mu1 * std::cos(ctrl.phi1);
  const double u2 = 2.0 * ctrl.mu1 * std::sin(ctrl.phi1);
  const cplx c23 = ctrl.mu2 * std::exp(cplx(0.0, -ctrl.phi2)) + eta;
  const double u3 = 2.0 * c23.real();
  const double u4 = 2.0 * c23.imag();

  CoherenceGenerator gen;
  auto& A = gen.A;

  // Pairing coherences decay at the single-atom rate.
  for (int i : {M14X, M14Y, M23X, M23Y})
    A[static_cast<size_t>(i)][static_cast<size_t>(i)] -= gamma;

  // Drive rotations between the pairing and population components. Each
  // control generates an antisymmetric rotation in one 2-plane.
  A[M14Y][M14Z] -= u1;
  A[M14Z][M14Y] += u1;
  A[M14X][M14Z] += u2;
  A[M14Z][M14X] -= u2;
  A[M23Y][M23Z] -= u3;
  A[M23Z][M23Y] += u3;
  A[M23X][M23Z] += u4;
  A[M23Z][M23X] -= u4;

  // Population-like block: decay contraction and the ground-state source.
  A[M14Z][M14Z] -= gamma;
  A[M23Z][M23Z] -= gamma;
  A[MZZ][M14Z] += kSqrt2 * gamma;
  A[MZZ][MZZ] -= 2.0 * gamma;
  gen.g[M14Z] = 0.5 * kSqrt2 * gamma;

  if (collective) {
    // Correlated decay couples the exchange coherence into the populations.
    // These terms conserve m_zz + sqrt2 * m23x (the symmetry weight kappa).
    A[M14Z][M23X] += gamma;
    A[M23X][M14Z] -= gamma;
    A[M23X][MZZ] += kSqrt2 * gamma;
    A[MZZ][M23X] += kSqrt2 * gamma;
  }

  // Autonomous single-excitation block: project the master equation onto the
  // eight corresponding basis operators (the generator is linear, so applying
  // it to each basis operator yields the block columns).
  const ModelSpec model = make_model(ctrl, channel);
  const auto& basis = omega_basis();
  for (int j = MX0; j <= MZY; ++j) {
    const Mat4 image = lindblad_rhs(model, basis[static_cast<size_t>(j)]);
    for (int i = MX0; i <= MZY; ++i) {
      const cplx t = (basis[static_cast<size_t>(i)] * image).trace();
      A[static_cast<size_t>(i)][static_cast<size_t>(j)] = t.real();
    }
  }
  return gen;
}

inline CoherenceVector coherence_rhs(const ControlParams& ctrl,
                                     const ChannelSpec& channel,
                                     const CoherenceVector& m) {
  return build_coherence_generator(ctrl, channel).apply(m);
}

struct CoherenceTrajectory {
  std::vector<double> t;
  std::vector<CoherenceVector> m;
};

// Fixed-step RK4 on the affine coherence system.
inline CoherenceTrajectory propagate_coherence(const ControlParams& ctrl,
                                               const ChannelSpec& channel,
                                               const CoherenceVector& m0,
                                               double t_max, double dt = 0.0,
                                               int sample_every = 1) {
  if (!(t_max >= 0.0)) throw InvalidArgument("propagate_coherence: t_max must be >= 0");
  if (sample_every < 1)
    throw InvalidArgument("propagate_coherence: sample_every must be >= 1");
  const CoherenceGenerator gen = build_coherence_generator(ctrl, channel);
  const auto f = [&gen](const CoherenceVector& m) { return gen.apply(m); };

  const double scale = std::max({channel.gamma, std::abs(channel.eta0),
                                 ctrl.mu1, ctrl.mu2, 1e-300});
  CoherenceTrajectory out;
  out.t.push_back(0.0);
  out.m.push_back(m0);
  if (t_max == 0.0) return out;

  double h = (dt > 0.0) ? dt : 0.01 / scale;
  h = std::min(h, t_max);
  const long steps = static_cast<long>(std::ceil(t_max / h - 1e-9));
  h = t_max / static_cast<double>(steps);
  CoherenceVector m = m0;
  for (long k = 1; k <= steps; ++k) {
    m = rk4_step(f, m, h);
    if (k % sample_every == 0 || k == steps) {
      out.t.push_back(static_cast<double>(k) * h);
      out.m.push_back(m);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Stationary states (numeric).
// ---------------------------------------------------------------------------

// Full projected generator (any channel): dm/dt = A m + g in the operator
// basis, built column-by-column from the master equation.
struct AffineGenerator {
  std::array<std::array<double, 15>, 15> A{};
  std::array<double, 15> g{};
};

inline AffineGenerator generator_matrix(const ModelSpec& model) {
  AffineGenerator out;
  const auto& basis = omega_basis();
  const Mat4 source = lindblad_rhs(model, 0.25 * Mat4::identity());
  for (int i = 0; i < 15; ++i)
    out.g[static_cast<size_t>(i)] =
        (basis[static_cast<size_t>(i)] * source).trace().real();
  for (int j = 0; j < 15; ++j) {
    const Mat4 image = lindblad_rhs(model, basis[static_cast<size_t>(j)]);
    for (int i = 0; i < 15; ++i)
      out.A[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          (basis[static_cast<size_t>(i)] * image).trace().real();
  }
  return out;
}

namespace detail {

// Solve A x = -g by Gaussian elimination with partial pivoting.
inline std::array<double, 15> solve_stationary_linear(
    const std::array<std::array<double, 15>, 15>& A,
    const std::array<double, 15>& g) {
  double m[15][16];
  double amax = 0.0;
  for (int i = 0; i < 15; ++i) {
    for (int j = 0; j < 15; ++j) {
      m[i][j] = A[static_cast<size_t>(i)][static_cast<size_t>(j)];
      amax = std::max(amax, std::abs(m[i][j]));
    }
    m[i][15] = -g[static_cast<size_t>(i)];
  }
  const double pivot_floor = 1e-12 * std::max(amax, 1e-300);

  for (int col = 0; col < 15; ++col) {
    int piv = col;
    for (int r = col + 1; r < 15; ++r)
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    if (std::abs(m[piv][col]) < pivot_floor)
      throw SingularGenerator(
          "stationarity system is singular (conserved quantity present?)");
    if (piv != col)
      for (int j = col; j < 16; ++j) std::swap(m[piv][j], m[col][j]);
    for (int r = col + 1; r < 15; ++r) {
      const double f = m[r][col] / m[col][col];
      if (f == 0.0) continue;
      for (int j = col; j < 16; ++j) m[r][j] -= f * m[col][j];
    }
  }
  std::array<double, 15> x{};
  for (int i = 14; i >= 0; --i) {
    double s = m[i][15];
    for (int j = i + 1; j < 15; ++j) s -= m[i][j] * x[static_cast<size_t>(j)];
    x[static_cast<size_t>(i)] = s / m[i][i];
  }
  return x;
}

}  // namespace detail

struct NumericStationary {
  Mat4 rho;
  double residual = 0.0;         // ||d rho/dt||_max at the returned state
  double relaxation_time = 0.0;  // time integrated (relaxation path only)
};

// Stationary state of the model. Channels with a regular generator
// (independent, mixed) are solved directly; the collective channel conserves
// the symmetry weight kappa, so its stationary state depends on the initial
// state and is found by relaxing rho0 (required in that case) until the
// right-hand side is negligible.
inline NumericStationary stationary_numeric(
    const ModelSpec& model, const std::optional<Mat4>& rho0 = std::nullopt,
    double residual_tol_factor = 1e-10, double max_relax_time_factor = 200.0) {
  const double scale = rate_scale(model);
  NumericStationary out;

  if (model.channel.kind == ChannelKind::Collective) {
    if (!rho0)
      throw InvalidArgument(
          "collective channel: stationary state depends on the initial state; "
          "pass rho0");
    Mat4 rho = DensityMatrix::checked(*rho0).rho();
    const double chunk = 5.0 / scale;
    const double t_cap = max_relax_time_factor / scale;
    double t = 0.0;
    IntegrationOptions opt;
    opt.sample_every = 1 << 30;  // endpoints only
    while (true) {
      out.residual = lindblad_rhs(model, rho).max_abs();
      if (out.residual < residual_tol_factor * scale) break;
      if (t >= t_cap)
        throw NoConvergence("collective relaxation did not reach stationarity");
      const Trajectory leg = propagate(model, rho, chunk, opt);
      rho = leg.samples.back().rho;
      t += chunk;
    }
    out.rho = rho;
    out.relaxation_time = t;
    return out;
  }

  const AffineGenerator gen = generator_matrix(model);
  const std::array<double, 15> x = detail::solve_stationary_linear(gen.A, gen.g);
  CoherenceVector m;
  for (int i = 0; i < 15; ++i) m[i] = x[static_cast<size_t>(i)];
  Mat4 rho = coherence_to_rho(m);
  rho = DensityMatrix::checked(rho).rho();
  out.rho = rho;
  out.residual = lindblad_rhs(model, rho).max_abs();
  if (out.residual > 1e-9 * scale)
    throw NoConvergence("stationary solve residual is too large");
  return out;
}

}  // namespace entlab
