// entlab — two-atom dissipative-entanglement toolbox.
//
// Usage:
//   entlab <command> [--config PATH] [--preset NAME] [--out DIR]
//          [--svg] [--emit-coherence]
//
// Commands: simulate | steady | sweep | optimize | reproduce.
// Exit codes: 0 success, 2 configuration/usage error, 3 numeric failure.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "entlab/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "Two-atom spontaneous-emission control: trajectories, stationary "
      "states, drive sweeps, optima and figure data"};
  app.name("entlab");

  entlab::CliOptions opts;
  app.add_option("command", opts.command,
                 "simulate | steady | sweep | optimize | reproduce")
      ->required();
  app.add_option("--config", opts.config_path,
                 "key = value configuration file");
  app.add_option("--preset", opts.preset,
                 "figure preset for reproduce (fig2, fig3, fig3a, fig3b, "
                 "fig4, fig4a, fig4b, fig5, fig5a, fig5b)");
  app.add_option("--out", opts.out_dir, "output directory (default: .)");
  app.add_flag("--svg", opts.svg, "also draw an SVG chart");
  app.add_flag("--emit-coherence", opts.emit_coherence,
               "append the 15 coherence-vector columns to simulate output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  return entlab::run_cli(opts, std::cout, std::cerr);
}
