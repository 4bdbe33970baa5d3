// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: parses a config file and/or flags, dispatches a
// study, and writes CSV/JSON artifacts. Exit codes: 0 success, 1 study
// failure, 2 configuration error.

#include <CLI11.hpp>
#include <iostream>

#include "sllb/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Finite element experiments for the stochastic "
               "Landau-Lifshitz-Bloch equation"};
  app.require_subcommand(1);

  sllb::RunConfig config;
  app.set_config("--config", "",
                 "Config file: key = value lines under a [run] section "
                 "(a previous run's manifest.txt works); flags override it")
      ->check(CLI::ExistingFile);
  CLI::App* run = app.add_subcommand("run", "Run a study and write artifacts");
  run->fallthrough();

  run->add_option("simulation", config.simulation, "sim1 | sim2 | sim3 | custom")
      ->required();
  run->add_option("study", config.study,
                  "convergence_spatial | convergence_temporal | energy | "
                  "stability | single_run")
      ->required();

  run->add_option("--seed", config.seed, "Base seed; path p uses (seed, p)");
  run->add_option("--m", config.paths,
                  "Monte Carlo paths (default: 50 convergence, 30 otherwise)");
  run->add_option("--scheme", config.scheme,
                  "semi | implicit (default: simulation preset)");
  run->add_option("--noise", config.noise,
                  "sim3 noise preset: small | moderate | large");
  run->add_option("--T", config.T, "Horizon (default depends on the study)");

  run->add_option("--h-levels", config.h_levels,
                  "Spatial levels as 1/h values, coarse to fine")
      ->delimiter(',');
  run->add_option("--ref-h", config.ref_h, "Reference 1/h");
  run->add_option("--k-levels", config.k_levels,
                  "Temporal levels as 1/k values, coarse to fine")
      ->delimiter(',');
  run->add_option("--ref-k", config.ref_k, "Reference 1/k");
  run->add_option("--fixed-k-inv", config.fixed_k_inverse,
                  "Shared 1/k of the spatial study");
  run->add_option("--fixed-mesh-n", config.fixed_mesh_n,
                  "Shared 1/h of the temporal study");

  run->add_option("--mesh-n", config.mesh_n,
                  "1/h of energy, stability and single runs");
  run->add_option("--k-inv", config.k_inverse,
                  "1/k of energy, stability and single runs");
  run->add_option("--eps", config.epsilons, "Stability perturbation sizes")
      ->delimiter(',');
  run->add_option("--window-lo", config.window_lo, "Decay fit window start");
  run->add_option("--window-hi", config.window_hi, "Decay fit window end");

  run->add_option("--fields", config.fields,
                  "custom: which preset supplies u0 and g");
  run->add_option("--kappa1", config.kappa1, "custom coefficient");
  run->add_option("--gamma", config.gamma, "custom coefficient");
  run->add_option("--kappa2", config.kappa2, "custom coefficient");
  run->add_option("--mu", config.mu, "custom coefficient");

  run->add_option("--threads", config.threads,
                  "Worker threads (0: hardware concurrency)");
  run->add_option("--out", config.out_dir, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    return sllb::run_study(config);
  } catch (const sllb::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "study failed: " << e.what() << "\n";
    return 1;
  }
}
