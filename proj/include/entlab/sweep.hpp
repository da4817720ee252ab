#pragma once
// Parameter sweeps of the stationary concurrence and fidelity over the
// pairing-drive amplitude mu1, in closed form and/or via the numeric
// stationary solver. Rows are independent; they may be evaluated on worker
// threads but are always assembled in grid order, so output is deterministic
// regardless of scheduling.

#include <cmath>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "entlab/dynamics.hpp"
#include "entlab/entangle.hpp"
#include "entlab/errors.hpp"
#include "entlab/model.hpp"
#include "entlab/states.hpp"
#include "entlab/stationary.hpp"

namespace entlab {

enum class SweepMode { Analytic, Numeric, Both };

struct SweepRequest {
  ChannelSpec channel;    // decay kind and rates (gamma sets the mu1 scale)
  double kappa = 1.0;     // collective symmetry weight; fixes the numeric
                          // relaxation start (1-kappa)*singlet + kappa*ground
  DephasingNoise noise;   // independent-channel corner damping (analytic only)
  double phi1 = 0.0;      // pairing-drive phase (rotates the corner target)
  double lo_factor = 0.0; // grid start, units of gamma
  double hi_factor = 2.0; // grid end, units of gamma
  int points = 201;       // inclusive grid size
  SweepMode mode = SweepMode::Analytic;
  int threads = 1;
};

struct SweepPoint {
  double mu1 = 0.0;
  double c_analytic = std::numeric_limits<double>::quiet_NaN();
  double f_analytic = std::numeric_limits<double>::quiet_NaN();
  double c_numeric = std::numeric_limits<double>::quiet_NaN();
  double f_numeric = std::numeric_limits<double>::quiet_NaN();
  bool ok = true;
  std::string error;
};

namespace detail {

// The closed-form stationary family for one channel kind. The mixed channel
// shares the independent family: its cross-decay terms annihilate on that
// family's states, so the same closed form is exact for it.
inline StationaryReport analytic_stationary(const SweepRequest& req,
                                            double mu1) {
  switch (req.channel.kind) {
    case ChannelKind::Collective:
      if (req.noise.sum() != 0.0)
        throw UnsupportedChannel(
            "sweep: no dephasing correction is defined for the collective "
            "channel");
      return stationary_collective(mu1, req.channel.gamma, req.kappa,
                                   req.phi1);
    case ChannelKind::Independent:
    case ChannelKind::Mixed:
      return dephased_stationary(mu1, req.channel.gamma, req.noise, req.phi1);
  }
  throw InvalidArgument("sweep: unknown channel kind");
}

inline void sweep_point(const SweepRequest& req, double mu1, SweepPoint& row) {
  row.mu1 = mu1;
  try {
    if (req.mode != SweepMode::Numeric) {
      const StationaryReport rep = analytic_stationary(req, mu1);
      row.c_analytic = rep.concurrence;
      row.f_analytic = rep.fidelity;
    }
    if (req.mode != SweepMode::Analytic) {
      ControlParams ctrl;
      ctrl.mu1 = mu1;
      ctrl.phi1 = req.phi1;
      const ModelSpec model = make_model(ctrl, req.channel);
      NumericStationary ns;
      if (req.channel.kind == ChannelKind::Collective) {
        const Mat4 rho0 = (1.0 - req.kappa) * singlet_projector() +
                          req.kappa * ground_state();
        ns = stationary_numeric(model, rho0);
      } else {
        ns = stationary_numeric(model);
      }
      row.c_numeric = concurrence(ns.rho);
      row.f_numeric = fidelity(ns.rho, corner_state(req.phi1));
    }
  } catch (const Error& e) {
    row.ok = false;
    row.error = e.what();
  }
}

}  // namespace detail

// Evaluate the stationary concurrence/fidelity on an inclusive uniform grid
// of mu1 in [lo_factor, hi_factor] * gamma. A failed row is recorded with its
// error message and does not abort the sweep.
inline std::vector<SweepPoint> run_sweep(const SweepRequest& req) {
  if (req.points < 2) throw InvalidArgument("sweep: need at least two points");
  if (!(req.hi_factor > req.lo_factor))
    throw InvalidArgument("sweep: empty mu1 range");
  if (req.threads < 1) throw InvalidArgument("sweep: thread count must be >= 1");
  build_channel(req.channel.kind, req.channel.gamma, req.channel.gamma12,
                req.channel.eta0);  // validate rates up front

  const double lo = req.lo_factor * req.channel.gamma;
  const double hi = req.hi_factor * req.channel.gamma;
  const int n = req.points;
  std::vector<SweepPoint> rows(static_cast<size_t>(n));
  const auto mu_at = [&](int i) {
    return lo + (hi - lo) * static_cast<double>(i) / (n - 1);
  };

  const int workers = std::min(req.threads, n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i)
      detail::sweep_point(req, mu_at(i), rows[static_cast<size_t>(i)]);
    return rows;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      for (int i = w; i < n; i += workers)
        detail::sweep_point(req, mu_at(i), rows[static_cast<size_t>(i)]);
    });
  }
  for (auto& t : pool) t.join();
  return rows;
}

}  // namespace entlab
