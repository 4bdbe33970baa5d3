// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sllb {

/// Resolved configuration of one command-line run. Built-in simulations pin
/// their published coefficients; `custom` takes a coefficient table and a
/// named field preset.
struct RunConfig {
  std::string simulation = "sim1";  // sim1 | sim2 | sim3 | custom
  std::string study = "single_run"; // convergence_spatial | convergence_temporal
                                    // | energy | stability | single_run
  std::string scheme;               // semi | implicit; empty: simulation default
  std::string noise = "small";      // sim3 preset: small | moderate | large
  std::string fields = "sim1";      // custom only: which built-in u0/g to use

  // custom-only coefficient table
  double kappa1 = 1.0, gamma = 1.0, kappa2 = 1.0, mu = 1.0;

  std::uint64_t seed = 0;
  std::optional<int> paths;         // default: 50 convergence, 30 otherwise
  std::optional<double> T;          // default depends on the study

  std::vector<int> h_levels = {4, 8, 16, 32};
  int ref_h = 64;
  std::vector<int> k_levels = {25, 50, 100, 200};
  int ref_k = 400;
  int fixed_k_inverse = 400;        // spatial studies: shared 1/k
  int fixed_mesh_n = 64;            // temporal studies: shared 1/h

  int mesh_n = 32;                  // energy / stability / single_run 1/h
  int k_inverse = 100;              // energy / stability / single_run 1/k
  std::vector<double> epsilons = {1e-1, 1e-2, 1e-3};
  double window_lo = 0.5, window_hi = 2.0;

  int threads = 0;
  std::string out_dir = "out";
};

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Validate, dispatch the study, and write the artifacts (manifest.txt,
/// CSV tables, summary.json) into config.out_dir. Returns 0 on success and
/// 1 on study failure; configuration problems throw ConfigError (exit 2 at
/// the CLI).
int run_study(const RunConfig& config);

/// CSV-safe rendering of a double: '.' decimal separator, 17 significant
/// digits, locale-independent.
std::string format_double(double v);

} // namespace sllb
