#pragma once
// Command engine behind the `entlab` executable, exposed as a library
// function so tests can drive it in-process. Five commands:
//
//   simulate   integrate one trajectory, emit t/C/purity/populations CSV
//   steady     one-row CSV with the stationary decomposition for the channel
//   sweep      stationary concurrence/fidelity over a mu1 grid
//   optimize   best mu1 with closed-form cross-check
//   reproduce  named figure presets (fig2..fig5b): data CSV plus SVG chart
//
// Configuration is a flat key = value file (see io/config.hpp) with sections
// model / control / noise / initial / run / sweep / reproduce / units. All
// rates entering and times leaving the program are expressed in units of the
// single-atom decay rate gamma (time unit 1/gamma) unless units.si = true, in
// which case inputs are absolute and only the emitted columns stay in units
// of gamma. Exit codes: 0 success, 2 configuration error (the message names
// the offending key), 3 numeric failure.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "entlab/basis.hpp"
#include "entlab/density.hpp"
#include "entlab/dynamics.hpp"
#include "entlab/entangle.hpp"
#include "entlab/errors.hpp"
#include "entlab/io/config.hpp"
#include "entlab/io/csv.hpp"
#include "entlab/io/svg.hpp"
#include "entlab/model.hpp"
#include "entlab/optimize.hpp"
#include "entlab/physical.hpp"
#include "entlab/states.hpp"
#include "entlab/stationary.hpp"
#include "entlab/sweep.hpp"

namespace entlab {

struct CliOptions {
  std::string command;          // simulate | steady | sweep | optimize | reproduce
  std::string config_path;      // --config PATH
  std::string preset;           // --preset NAME (reproduce only)
  std::string out_dir = ".";    // --out DIR
  bool svg = false;             // --svg (simulate/sweep; reproduce always draws)
  bool emit_coherence = false;  // --emit-coherence (simulate)
};

namespace cli_detail {

struct RunSettings {
  ChannelSpec channel;
  ControlParams control;  // absolute rates
  DephasingNoise noise;
  std::optional<Mat4> initial;
  std::string initial_name;
  std::optional<double> kappa_key;  // model.kappa when given explicitly
  double t_max = 20.0;              // units of 1/gamma
  double dt = 0.0;                  // units of 1/gamma; 0 = automatic
  StepMode mode = StepMode::Fixed;
  int sample_every = 10;
  double sweep_lo = 0.0;
  double sweep_hi = 2.0;
  int sweep_points = 201;
  SweepMode sweep_mode = SweepMode::Analytic;
  int threads = 1;
  std::string output;  // basename override for the emitted files
  bool si_units = false;
};

inline ChannelKind parse_channel_kind(const std::string& name) {
  if (name == "independent") return ChannelKind::Independent;
  if (name == "collective") return ChannelKind::Collective;
  if (name == "mixed") return ChannelKind::Mixed;
  throw ConfigError("model.channel must be independent, collective or mixed; "
                    "got '" + name + "'",
                    "model.channel");
}

inline cplx parse_complex(const Config& cfg, const std::string& key) {
  const std::vector<double> parts = cfg.get_double_list(key);
  if (parts.size() > 2)
    throw ConfigError("expected 're' or 're im' for key '" + key + "'", key);
  return cplx(parts[0], parts.size() == 2 ? parts[1] : 0.0);
}

inline Mat4 parse_custom_initial(const Config& cfg) {
  Mat4 raw;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const std::string key =
          "initial.rho" + std::to_string(i) + std::to_string(j);
      if (!cfg.has(key))
        throw ConfigError("custom initial state needs all 16 entries; missing "
                          "'" + key + "'",
                          key);
      raw(i, j) = parse_complex(cfg, key);
    }
  try {
    return DensityMatrix::checked(raw).rho();
  } catch (const Error& e) {
    throw ConfigError(std::string("initial.rho*: not a density matrix: ") +
                          e.what(),
                      "initial.rho00");
  }
}

inline RunSettings load_settings(const Config& cfg, std::ostream& err) {
  RunSettings s;
  s.si_units = cfg.get_bool("units.si", false);

  // --- model section ---------------------------------------------------
  const ChannelKind kind =
      parse_channel_kind(cfg.get_string("model.channel", "independent"));
  const double gamma = cfg.get_double("model.gamma", 1.0);
  if (!(gamma > 0.0))
    throw ConfigError("model.gamma must be positive", "model.gamma");

  double gamma12 = 0.0;
  double eta0 = 0.0;
  const bool have_geometry = cfg.has("model.k0_r12");
  if (have_geometry) {
    if (cfg.has("model.gamma12"))
      throw ConfigError(
          "give either model.gamma12 or the geometry keys, not both",
          "model.gamma12");
    if (kind == ChannelKind::Independent)
      throw ConfigError(
          "geometry keys model.k0_r12/model.theta apply to the collective or "
          "mixed channel only",
          "model.k0_r12");
    const double x = cfg.get_double("model.k0_r12");
    const double theta = cfg.get_double("model.theta", 0.0);
    eta0 = dipole_shift(x, theta, gamma);
    gamma12 = (kind == ChannelKind::Collective)
                  ? gamma
                  : gamma * collective_factor(x, theta);
  } else {
    switch (kind) {
      case ChannelKind::Independent:
        gamma12 = cfg.get_double("model.gamma12", 0.0);
        break;
      case ChannelKind::Collective:
        gamma12 = cfg.get_double("model.gamma12", gamma);
        break;
      case ChannelKind::Mixed:
        if (!cfg.has("model.gamma12"))
          throw ConfigError("mixed channel requires model.gamma12",
                            "model.gamma12");
        gamma12 = cfg.get_double("model.gamma12");
        break;
    }
  }
  if (cfg.has("model.eta0")) eta0 = cfg.get_double("model.eta0");
  try {
    s.channel = build_channel(kind, gamma, gamma12, eta0);
  } catch (const Error& e) {
    throw ConfigError(std::string("model: ") + e.what(), "model.gamma12");
  }
  if (cfg.has("model.kappa")) {
    s.kappa_key = cfg.get_double("model.kappa");
    if (!(*s.kappa_key >= 0.0 && *s.kappa_key <= 1.0))
      throw ConfigError("model.kappa must lie in [0, 1]", "model.kappa");
  }

  // --- control section --------------------------------------------------
  const bool any_direct = cfg.has("control.mu1") || cfg.has("control.phi1") ||
                          cfg.has("control.mu2") || cfg.has("control.phi2");
  const bool any_physical = cfg.has("control.xi") || cfg.has("control.delta") ||
                            cfg.has("control.eps1") || cfg.has("control.eps2");
  if (any_direct && any_physical)
    throw ConfigError(
        "exactly one of the direct (control.mu1/phi1/mu2/phi2) and physical "
        "(control.xi/delta/eps1/eps2) control styles may be present",
        cfg.has("control.mu1") ? "control.mu1" : "control.phi1");
  if (any_physical) {
    const double xi = cfg.get_double("control.xi");
    const double delta = cfg.get_double("control.delta");
    const cplx eps1 = parse_complex(cfg, "control.eps1");
    const cplx eps2 = parse_complex(cfg, "control.eps2");
    try {
      const ControlsResult res = effective_controls(xi, delta, eps1, eps2);
      s.control = res.params;
      for (const std::string& w : res.warnings)
        err << "warning: " << w << "\n";
    } catch (const ZeroDetuning& e) {
      throw ConfigError(std::string("control.delta: ") + e.what(),
                        "control.delta");
    }
  } else {
    const double unit = s.si_units ? 1.0 : gamma;  // direct controls in gamma units
    s.control.mu1 = cfg.get_double("control.mu1", 0.0) * unit;
    s.control.phi1 = cfg.get_double("control.phi1", 0.0);
    s.control.mu2 = cfg.get_double("control.mu2", 0.0) * unit;
    s.control.phi2 = cfg.get_double("control.phi2", 0.0);
  }
  if (s.control.mu1 < 0.0)
    throw ConfigError("control.mu1 must be nonnegative", "control.mu1");
  if (s.control.mu2 < 0.0)
    throw ConfigError("control.mu2 must be nonnegative", "control.mu2");

  // --- noise section ----------------------------------------------------
  s.noise.gamma1 = cfg.get_double("noise.gamma1", 0.0);
  s.noise.gamma2 = cfg.get_double("noise.gamma2", 0.0);
  if (s.noise.gamma1 < 0.0 || s.noise.gamma2 < 0.0)
    throw ConfigError("noise.gamma1/gamma2 must be nonnegative",
                      s.noise.gamma1 < 0.0 ? "noise.gamma1" : "noise.gamma2");

  // --- initial section ----------------------------------------------------
  if (cfg.has("initial.state")) {
    s.initial_name = cfg.get_string("initial.state");
    if (s.initial_name == "custom") {
      s.initial = parse_custom_initial(cfg);
    } else {
      try {
        s.initial = named_state(s.initial_name);
      } catch (const Error& e) {
        throw ConfigError(std::string("initial.state: ") + e.what(),
                          "initial.state");
      }
    }
  }

  // --- run section --------------------------------------------------------
  s.t_max = cfg.get_double("run.t_max", 20.0);
  if (!(s.t_max > 0.0))
    throw ConfigError("run.t_max must be positive", "run.t_max");
  s.dt = cfg.get_double("run.dt", 0.0);
  if (s.dt < 0.0) throw ConfigError("run.dt must be nonnegative", "run.dt");
  const std::string mode = cfg.get_string("run.mode", "fixed");
  if (mode == "fixed")
    s.mode = StepMode::Fixed;
  else if (mode == "adaptive")
    s.mode = StepMode::Adaptive;
  else
    throw ConfigError("run.mode must be fixed or adaptive", "run.mode");
  s.sample_every = cfg.get_int("run.sample_every", 10);
  if (s.sample_every < 1)
    throw ConfigError("run.sample_every must be >= 1", "run.sample_every");
  s.output = cfg.get_string("run.output", "");

  // --- sweep section --------------------------------------------------------
  s.sweep_lo = cfg.get_double("sweep.lo", 0.0);
  s.sweep_hi = cfg.get_double("sweep.hi", 2.0);
  s.sweep_points = cfg.get_int("sweep.points", 201);
  const std::string smode = cfg.get_string("sweep.mode", "analytic");
  if (smode == "analytic")
    s.sweep_mode = SweepMode::Analytic;
  else if (smode == "numeric")
    s.sweep_mode = SweepMode::Numeric;
  else if (smode == "both")
    s.sweep_mode = SweepMode::Both;
  else
    throw ConfigError("sweep.mode must be analytic, numeric or both",
                      "sweep.mode");
  s.threads = cfg.get_int("sweep.threads", 1);
  if (s.threads < 1)
    throw ConfigError("sweep.threads must be >= 1", "sweep.threads");

  return s;
}

// The collective symmetry weight for steady/sweep/optimize: explicit
// model.kappa, else derived from the initial state, else 1.
inline double resolve_kappa(const RunSettings& s) {
  if (s.kappa_key && s.initial)
    throw ConfigError("give either model.kappa or initial.state, not both",
                      "model.kappa");
  if (s.kappa_key) return *s.kappa_key;
  if (s.initial) return kappa_of(*s.initial);
  return 1.0;
}

inline std::filesystem::path output_path(const CliOptions& opts,
                                         const std::string& basename,
                                         const char* ext) {
  return std::filesystem::path(opts.out_dir) / (basename + std::string(ext));
}

inline std::ofstream open_output(const std::filesystem::path& p) {
  std::error_code ec;  // surfaced below as an open failure, not an exception
  std::filesystem::create_directories(
      p.parent_path().empty() ? std::filesystem::path(".") : p.parent_path(),
      ec);
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error("cannot open output file: " + p.string());
  return out;
}

// Warn when the collective closed forms are consulted while the exchange
// control fails to cancel the dipole-dipole shift they assume away.
inline void warn_uncancelled_exchange(const RunSettings& s, std::ostream& err) {
  if (s.channel.kind != ChannelKind::Collective) return;
  const cplx resid = s.control.mu2 * std::exp(cplx(0.0, -s.control.phi2)) +
                     s.channel.eta0;
  if (std::abs(resid) > 1e-12 * s.channel.gamma)
    err << "warning: the collective stationary family assumes the exchange "
           "control cancels the dipole-dipole shift (mu2 e^{-i phi2} + eta0 "
           "= 0); residual "
        << format_sig12(std::abs(resid)) << "\n";
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

inline void emit_trajectory_csv(std::ostream& os, const Trajectory& traj,
                                double gamma, bool emit_coherence) {
  CsvWriter csv(os);
  std::vector<std::string> names = {"t",   "C",   "purity", "p00", "p01",
                                    "p10", "p11", "Re w",   "Re z"};
  if (emit_coherence)
    for (std::string_view n : kCoherenceNames) names.emplace_back(n);
  csv.header(names);
  for (const TrajectorySample& smp : traj.samples) {
    DensityMatrix::checked(smp.rho);  // every emitted row is a valid state
    std::vector<double> row = {smp.t * gamma,
                               concurrence(smp.rho),
                               overlap(smp.rho, smp.rho),
                               smp.rho(0, 0).real(),
                               smp.rho(1, 1).real(),
                               smp.rho(2, 2).real(),
                               smp.rho(3, 3).real(),
                               smp.rho(0, 3).real(),
                               smp.rho(1, 2).real()};
    if (emit_coherence) {
      const CoherenceVector m = rho_to_coherence(smp.rho);
      for (int i = 0; i < 15; ++i) row.push_back(m[i]);
    }
    csv.row(row);
  }
}

inline void cmd_simulate(const CliOptions& opts, const RunSettings& s,
                         std::ostream& err) {
  const Mat4 rho0 = s.initial ? *s.initial : ground_state();
  const ModelSpec model = make_model(s.control, s.channel);
  IntegrationOptions opt;
  opt.mode = s.mode;
  opt.sample_every = s.sample_every;
  if (s.dt > 0.0) opt.dt = s.dt / s.channel.gamma;
  const Trajectory traj =
      propagate(model, rho0, s.t_max / s.channel.gamma, opt);

  const std::string base = s.output.empty() ? "simulate" : s.output;
  auto csv_out = open_output(output_path(opts, base, ".csv"));
  emit_trajectory_csv(csv_out, traj, s.channel.gamma, opts.emit_coherence);

  if (opts.svg) {
    SvgSeries c_of_t;
    c_of_t.label = "C(t)";
    for (const TrajectorySample& smp : traj.samples) {
      c_of_t.x.push_back(smp.t * s.channel.gamma);
      c_of_t.y.push_back(concurrence(smp.rho));
    }
    SvgAxes axes;
    axes.title = "Concurrence along the trajectory";
    axes.xlabel = "t [1/gamma]";
    axes.ylabel = "C";
    axes.xmin = 0.0;
    axes.xmax = s.t_max;
    axes.ymin = 0.0;
    axes.ymax = 1.0;
    auto svg_out = open_output(output_path(opts, base, ".svg"));
    write_svg_chart(svg_out, axes, {c_of_t});
  }
  err << "simulate: " << traj.samples.size() << " rows, " << traj.steps
      << " steps\n";
}

// ---------------------------------------------------------------------------
// steady
// ---------------------------------------------------------------------------

inline void cmd_steady(const CliOptions& opts, const RunSettings& s,
                       std::ostream& err) {
  const double gamma = s.channel.gamma;
  const double mu1 = s.control.mu1;
  const double phi1 = s.control.phi1;

  double kappa = 1.0, C = 0.0, F = 0.0, ws = 0.0, wr = 0.0, wrest = 0.0;
  switch (s.channel.kind) {
    case ChannelKind::Independent: {
      const StationaryReport rep =
          dephased_stationary(mu1, gamma, s.noise, phi1);
      kappa = rep.kappa;
      C = rep.concurrence;
      F = rep.fidelity;
      wr = rep.weights.at("r");
      wrest = rep.weights.at("1-r");
      break;
    }
    case ChannelKind::Collective: {
      if (s.noise.sum() != 0.0)
        throw ConfigError(
            "no dephasing correction is defined for the collective channel",
            "noise.gamma1");
      warn_uncancelled_exchange(s, err);
      const StationaryReport rep =
          stationary_collective(mu1, gamma, resolve_kappa(s), phi1);
      kappa = rep.kappa;
      C = rep.concurrence;
      F = rep.fidelity;
      ws = rep.weights.at("s");
      wr = rep.weights.at("r");
      wrest = rep.weights.at("1-s-r");
      break;
    }
    case ChannelKind::Mixed: {
      if (s.noise.sum() != 0.0)
        throw ConfigError(
            "no dephasing correction is defined for the mixed channel",
            "noise.gamma1");
      const ModelSpec model = make_model(s.control, s.channel);
      const NumericStationary ns = stationary_numeric(model);
      kappa = kappa_of(ns.rho);
      C = concurrence(ns.rho);
      F = fidelity(ns.rho, corner_state(phi1));
      wr = 2.0 * std::abs(ns.rho(0, 3));
      ws = -2.0 * ns.rho(1, 2).real();
      wrest = 1.0 - ws - wr;
      break;
    }
  }

  const char* kind_name = s.channel.kind == ChannelKind::Independent
                              ? "independent"
                              : (s.channel.kind == ChannelKind::Collective
                                     ? "collective"
                                     : "mixed");
  const std::string base = s.output.empty() ? "steady" : s.output;
  auto out = open_output(output_path(opts, base, ".csv"));
  CsvWriter csv(out);
  csv.header({"channel", "mu1_over_gamma", "kappa", "C", "fidelity", "s", "r",
              "rest"});
  csv.row_texts({kind_name, format_sig12(mu1 / gamma), format_sig12(kappa),
                 format_sig12(C), format_sig12(F), format_sig12(ws),
                 format_sig12(wr), format_sig12(wrest)});
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

inline void cmd_sweep(const CliOptions& opts, const RunSettings& s,
                      std::ostream& err) {
  SweepRequest req;
  req.channel = s.channel;
  req.kappa = resolve_kappa(s);
  req.noise = s.noise;
  req.phi1 = s.control.phi1;
  req.lo_factor = s.sweep_lo;
  req.hi_factor = s.sweep_hi;
  req.points = s.sweep_points;
  req.mode = s.sweep_mode;
  req.threads = s.threads;
  if (s.channel.kind == ChannelKind::Collective)
    warn_uncancelled_exchange(s, err);

  const std::vector<SweepPoint> rows = run_sweep(req);

  const std::string base = s.output.empty() ? "sweep" : s.output;
  auto out = open_output(output_path(opts, base, ".csv"));
  CsvWriter csv(out);
  csv.header({"mu1_over_gamma", "C_analytic", "F_analytic", "C_numeric",
              "F_numeric", "ok", "error"});
  int failures = 0;
  for (const SweepPoint& p : rows) {
    std::string msg = p.error;
    for (char& c : msg)
      if (c == ',' || c == '\n') c = ';';
    if (!p.ok) ++failures;
    csv.row_texts({format_sig12(p.mu1 / s.channel.gamma),
                   format_sig12(p.c_analytic), format_sig12(p.f_analytic),
                   format_sig12(p.c_numeric), format_sig12(p.f_numeric),
                   p.ok ? "1" : "0", msg});
  }
  if (failures) err << "warning: " << failures << " sweep rows failed\n";

  if (opts.svg) {
    std::vector<SvgSeries> series;
    if (req.mode != SweepMode::Numeric) {
      SvgSeries sa;
      sa.label = "C (closed form)";
      for (const SweepPoint& p : rows)
        if (p.ok) {
          sa.x.push_back(p.mu1 / s.channel.gamma);
          sa.y.push_back(p.c_analytic);
        }
      series.push_back(std::move(sa));
    }
    if (req.mode != SweepMode::Analytic) {
      SvgSeries sn;
      sn.label = "C (numeric)";
      for (const SweepPoint& p : rows)
        if (p.ok) {
          sn.x.push_back(p.mu1 / s.channel.gamma);
          sn.y.push_back(p.c_numeric);
        }
      series.push_back(std::move(sn));
    }
    SvgAxes axes;
    axes.title = "Stationary concurrence vs drive amplitude";
    axes.xlabel = "mu1 / gamma";
    axes.ylabel = "C";
    axes.xmin = s.sweep_lo;
    axes.xmax = s.sweep_hi;
    axes.ymin = 0.0;
    axes.ymax = 0.5;
    auto svg_out = open_output(output_path(opts, base, ".svg"));
    write_svg_chart(svg_out, axes, series);
  }
}

// ---------------------------------------------------------------------------
// optimize
// ---------------------------------------------------------------------------

inline void cmd_optimize(const CliOptions& opts, const RunSettings& s,
                         std::ostream& err) {
  if (s.channel.kind == ChannelKind::Mixed)
    throw ConfigError(
        "the mixed channel shares the independent stationary family; "
        "optimize with model.channel = independent",
        "model.channel");
  const double kappa = resolve_kappa(s);
  const OptimizeResult res =
      optimize_mu1(s.channel.kind, s.channel.gamma, kappa, s.noise);

  const std::string base = s.output.empty() ? "optimize" : s.output;
  auto out = open_output(output_path(opts, base, ".csv"));
  CsvWriter csv(out);
  csv.header({"channel", "kappa", "gamma1_plus_gamma2", "mu1_star_over_gamma",
              "value", "analytic_mu1_over_gamma", "analytic_value", "agreed",
              "evaluations"});
  const char* kind_name =
      s.channel.kind == ChannelKind::Independent ? "independent" : "collective";
  csv.row_texts({kind_name, format_sig12(kappa), format_sig12(s.noise.sum()),
                 format_sig12(res.mu1_star / s.channel.gamma),
                 format_sig12(res.value),
                 format_sig12(res.analytic_mu1 / s.channel.gamma),
                 format_sig12(res.analytic_value), res.agreed ? "1" : "0",
                 std::to_string(res.evaluations)});
  if (!res.agreed)
    err << "warning: numeric optimum disagrees with the closed form\n";
}

// ---------------------------------------------------------------------------
// reproduce
// ---------------------------------------------------------------------------

// Controlled + uncontrolled + free concurrence-vs-time curves from one
// initial state. The drive amplitudes are derived from requested corner
// weights r; the free curve evolves with neither drive nor decay.
struct TimePanel {
  std::string basename;
  std::string title;
  Mat4 rho0;
  std::vector<double> r_values;
  std::vector<double> mu_values;  // same length as r_values
  ChannelSpec channel;            // channel for the controlled/uncontrolled runs
};

inline std::vector<double> reproduce_r_list(const Config& cfg,
                                            const std::vector<double>& fallback) {
  if (!cfg.has("reproduce.r_values")) return fallback;
  return cfg.get_double_list("reproduce.r_values");
}

inline void emit_time_panel(const CliOptions& opts, const TimePanel& panel,
                            std::ostream& err) {
  const double gamma = panel.channel.gamma;
  const double t_max = 20.0;  // units of 1/gamma
  IntegrationOptions opt;
  opt.dt = 0.01 / gamma;
  opt.sample_every = 10;

  std::vector<SvgSeries> series;
  std::vector<std::string> names = {"t"};

  auto run_curve = [&](const ModelSpec& model, const std::string& label) {
    const Trajectory traj = propagate(model, panel.rho0, t_max / gamma, opt);
    SvgSeries sr;
    sr.label = label;
    for (const TrajectorySample& smp : traj.samples) {
      sr.x.push_back(smp.t * gamma);
      sr.y.push_back(concurrence(smp.rho));
    }
    series.push_back(std::move(sr));
  };

  for (size_t i = 0; i < panel.r_values.size(); ++i) {
    ControlParams ctrl;
    ctrl.mu1 = panel.mu_values[i];
    std::ostringstream label;
    label << "r = " << detail::svg_tick(panel.r_values[i]);
    run_curve(make_model(ctrl, panel.channel), label.str());
    names.push_back("C(" + label.str() + ")");
  }
  run_curve(make_model(ControlParams{}, panel.channel), "uncontrolled (mu1 = 0)");
  names.push_back("C(mu1=0)");
  {
    ChannelSpec free_channel;  // no decay: closed-system reference
    free_channel.gamma = 0.0;
    ModelSpec free_model{Mat4::zero(), free_channel};
    run_curve(free_model, "free (no drive, no decay)");
    names.push_back("C(free)");
  }

  auto out = open_output(output_path(opts, panel.basename, ".csv"));
  CsvWriter csv(out);
  csv.header(names);
  const size_t rows = series.front().x.size();
  for (size_t k = 0; k < rows; ++k) {
    std::vector<double> row = {series.front().x[k]};
    for (const SvgSeries& scur : series) row.push_back(scur.y[k]);
    csv.row(row);
  }

  SvgAxes axes;
  axes.title = panel.title;
  axes.xlabel = "t [1/gamma]";
  axes.ylabel = "Concurrence";
  axes.xmin = 0.0;
  axes.xmax = t_max;
  axes.ymin = 0.0;
  axes.ymax = 1.0;
  axes.xticks = 4;
  auto svg_out = open_output(output_path(opts, panel.basename, ".svg"));
  write_svg_chart(svg_out, axes, series);
  err << "wrote " << panel.basename << ".csv and " << panel.basename
      << ".svg\n";
}

inline void emit_fig2(const CliOptions& opts, std::ostream& err) {
  SweepRequest req;
  req.channel = build_channel(ChannelKind::Independent, 1.0);
  req.lo_factor = 0.0;
  req.hi_factor = 2.0;
  req.points = 2001;
  const std::vector<SweepPoint> rows = run_sweep(req);

  auto out = open_output(output_path(opts, "fig2", ".csv"));
  CsvWriter csv(out);
  csv.header({"mu1_over_gamma", "C"});
  SvgSeries sr;
  sr.label = "C (stationary)";
  for (const SweepPoint& p : rows) {
    csv.row({p.mu1, p.c_analytic});
    sr.x.push_back(p.mu1);
    sr.y.push_back(p.c_analytic);
  }

  SvgAxes axes;
  axes.title = "Stationary concurrence vs drive (independent channel)";
  axes.xlabel = "mu1 / gamma";
  axes.ylabel = "C";
  axes.xmin = 0.0;
  axes.xmax = 2.0;
  axes.ymin = 0.0;
  axes.ymax = 0.35;
  axes.xticks = 4;
  axes.yticks = 7;
  auto svg_out = open_output(output_path(opts, "fig2", ".svg"));
  write_svg_chart(svg_out, axes, {sr});
  err << "wrote fig2.csv and fig2.svg\n";
}

inline void emit_fig4(const CliOptions& opts, double kappa,
                      const std::string& basename, std::ostream& err) {
  SweepRequest req;
  req.channel = build_channel(ChannelKind::Collective, 1.0, 1.0);
  req.kappa = kappa;
  req.lo_factor = 0.0;
  req.hi_factor = 2.0;
  req.points = 2001;
  const std::vector<SweepPoint> rows = run_sweep(req);

  auto out = open_output(output_path(opts, basename, ".csv"));
  CsvWriter csv(out);
  csv.header({"mu1_over_gamma", "C_controlled", "C_uncontrolled"});
  SvgSeries ctl, unctl;
  ctl.label = "controlled";
  unctl.label = "uncontrolled (1 - kappa)";
  for (const SweepPoint& p : rows) {
    csv.row({p.mu1, p.c_analytic, 1.0 - kappa});
    ctl.x.push_back(p.mu1);
    ctl.y.push_back(p.c_analytic);
    unctl.x.push_back(p.mu1);
    unctl.y.push_back(1.0 - kappa);
  }

  SvgAxes axes;
  std::ostringstream title;
  title << "Collective stationary concurrence, kappa = "
        << detail::svg_tick(kappa);
  axes.title = title.str();
  axes.xlabel = "mu1 / gamma";
  axes.ylabel = "C";
  axes.xmin = 0.0;
  axes.xmax = 2.0;
  axes.ymin = 0.0;
  axes.ymax = 0.5;
  axes.xticks = 4;
  auto svg_out = open_output(output_path(opts, basename, ".svg"));
  write_svg_chart(svg_out, axes, {ctl, unctl});
  err << "wrote " << basename << ".csv and " << basename << ".svg\n";
}

// Invert r = 2 mu gamma / (4 mu^2 + gamma^2) on its rising branch.
inline double independent_mu_for_r(double r, double gamma) {
  if (!(r > 0.0) || r > 0.5)
    throw ConfigError(
        "independent-channel corner weight r must lie in (0, 0.5]; got " +
            format_sig12(r),
        "reproduce.r_values");
  return gamma * (1.0 - std::sqrt(1.0 - 4.0 * r * r)) / (4.0 * r);
}

// Invert r = 2 gamma mu kappa / (gamma^2 + 3 mu^2) on its rising branch.
inline double collective_mu_for_r(double r, double gamma, double kappa) {
  const double rmax = kappa / std::sqrt(3.0);
  if (!(r > 0.0) || r > rmax + 1e-15)
    throw ConfigError("collective corner weight r must lie in (0, kappa/sqrt3 "
                      "= " + format_sig12(rmax) + "]; got " + format_sig12(r),
                      "reproduce.r_values");
  const double disc = std::max(0.0, kappa * kappa - 3.0 * r * r);
  return gamma * (kappa - std::sqrt(disc)) / (3.0 * r);
}

inline void cmd_reproduce(const CliOptions& opts, const Config& cfg,
                          std::ostream& err) {
  const std::string name =
      !opts.preset.empty() ? opts.preset : cfg.get_string("reproduce.preset", "");
  if (name.empty())
    throw ConfigError("reproduce needs --preset NAME (fig2, fig3, fig3a, "
                      "fig3b, fig4, fig4a, fig4b, fig5, fig5a, fig5b)",
                      "reproduce.preset");

  const double gamma = 1.0;
  const auto indep = build_channel(ChannelKind::Independent, gamma);
  const auto coll = build_channel(ChannelKind::Collective, gamma, gamma);

  auto fig3_panel = [&](const Mat4& rho0, const std::string& base,
                        const std::string& title) {
    TimePanel panel;
    panel.basename = base;
    panel.title = title;
    panel.rho0 = rho0;
    panel.channel = indep;
    panel.r_values =
        reproduce_r_list(cfg, {0.2, 1.0 / std::sqrt(5.0), 0.49});
    for (double r : panel.r_values)
      panel.mu_values.push_back(independent_mu_for_r(r, gamma));
    emit_time_panel(opts, panel, err);
  };
  auto fig5_panel = [&](const Mat4& rho0, const std::string& base,
                        const std::string& title) {
    const double kappa = kappa_of(rho0);
    TimePanel panel;
    panel.basename = base;
    panel.title = title;
    panel.rho0 = rho0;
    panel.channel = coll;
    panel.r_values =
        reproduce_r_list(cfg, {0.25, kappa / std::sqrt(3.0), 0.45});
    for (double r : panel.r_values)
      panel.mu_values.push_back(collective_mu_for_r(r, gamma, kappa));
    emit_time_panel(opts, panel, err);
  };

  if (name == "fig2") {
    emit_fig2(opts, err);
  } else if (name == "fig3" || name == "fig3a" || name == "fig3b") {
    if (name != "fig3b")
      fig3_panel(bell_phi_plus(), "fig3a",
                 "Concurrence decay and control - Bell initial state");
    if (name != "fig3a")
      fig3_panel(skewed_corner_mix(), "fig3b",
                 "Concurrence decay and control - mixed initial state");
  } else if (name == "fig4" || name == "fig4a" || name == "fig4b") {
    if (name != "fig4b") emit_fig4(opts, 0.85, "fig4a", err);
    if (name != "fig4a") emit_fig4(opts, 1.0, "fig4b", err);
  } else if (name == "fig5" || name == "fig5a" || name == "fig5b") {
    if (name != "fig5b")
      fig5_panel(bell_one_excitation_mix(), "fig5a",
                 "Collective-channel concurrence - kappa = 0.875");
    if (name != "fig5a")
      fig5_panel(skewed_corner_mix(), "fig5b",
                 "Collective-channel concurrence - kappa = 0.95");
  } else {
    throw ConfigError("unknown preset '" + name + "'", "reproduce.preset");
  }
}

}  // namespace cli_detail

// Execute one command. Normal output files land in opts.out_dir; progress and
// warnings go to `err`. Returns the process exit code.
inline int run_cli(const CliOptions& opts, std::ostream& out,
                   std::ostream& err) {
  (void)out;
  try {
    Config cfg;
    if (!opts.config_path.empty())
      cfg = Config::parse_file(opts.config_path);

    if (opts.command == "reproduce") {
      cli_detail::cmd_reproduce(opts, cfg, err);
    } else if (opts.command == "simulate" || opts.command == "steady" ||
               opts.command == "sweep" || opts.command == "optimize") {
      if (!opts.preset.empty())
        throw ConfigError("--preset applies to the reproduce command only",
                          "reproduce.preset");
      const cli_detail::RunSettings settings =
          cli_detail::load_settings(cfg, err);
      if (opts.command == "simulate")
        cli_detail::cmd_simulate(opts, settings, err);
      else if (opts.command == "steady")
        cli_detail::cmd_steady(opts, settings, err);
      else if (opts.command == "sweep")
        cli_detail::cmd_sweep(opts, settings, err);
      else
        cli_detail::cmd_optimize(opts, settings, err);
    } else {
      throw ConfigError("unknown command '" + opts.command +
                            "'; expected simulate, steady, sweep, optimize or "
                            "reproduce",
                        "command");
    }
    cfg.check_all_consumed();
    return 0;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what();
    if (!e.key().empty() &&
        std::string(e.what()).find(e.key()) == std::string::npos)
      err << " (key " << e.key() << ")";
    err << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace entlab
