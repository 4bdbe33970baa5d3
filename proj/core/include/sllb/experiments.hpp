// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sllb/schemes.hpp"
#include "sllb/simulations.hpp"

namespace sllb {

// ---------------------------------------------------------------------------
// Slope fitting
// ---------------------------------------------------------------------------

enum class FitModel { log_log, semi_log };

struct Fit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Ordinary least squares in transformed coordinates: log y against log x
/// (log_log) or log y against x (semi_log). Requires >= 2 points and
/// positive values wherever a log is taken.
Fit fit_slope(const std::vector<std::pair<double, double>>& points,
              FitModel model);

// ---------------------------------------------------------------------------
// Convergence studies (common-path Monte Carlo)
// ---------------------------------------------------------------------------

enum class Axis { spatial, temporal };

struct ConvergenceConfig {
  SimulationSetup sim;
  SchemeKind scheme;
  Axis axis = Axis::spatial;

  // Levels as inverse spacings/steps, coarse to fine, e.g. {4, 8, 16, 32}
  // for h = 2^-j, or {25, 50, 100, 200} for the time-step ladder.
  std::vector<int> levels;
  int reference_level = 64;

  // Fixed complementary resolution: 1/k for the spatial axis, 1/h for the
  // temporal axis.
  int fixed_inverse = 400;

  double T = 0.2;
  int paths = 50;
  std::uint64_t seed = 0;
  int threads = 0;  // 0: hardware concurrency
};

struct ConvergenceLevel {
  double level_value;  // h or k of the coarse run
  double e0;
  double e1;
};

struct ConvergenceTable {
  Axis axis;
  std::vector<ConvergenceLevel> levels;
  double fitted_slope_0 = 0.0;  // convergence order for E_0 (log E vs log h|k)
  double fitted_slope_1 = 0.0;
  int paths = 0;
};

/// Runs the reference level and every coarse level on the same Brownian
/// path per sample, averages squared errors over paths, and fits log-log
/// slopes against the level spacing. Spatial axis: all levels share the
/// fixed time step. Temporal axis: all levels share the fixed mesh and the
/// coarse runs consume exactly coarsened increments of the reference path.
ConvergenceTable convergence_study(const ConvergenceConfig& config);

// ---------------------------------------------------------------------------
// Energy evolution
// ---------------------------------------------------------------------------

struct EnergyConfig {
  SimulationSetup sim;
  SchemeKind scheme;
  int mesh_n = 32;
  int k_inverse = 100;
  double T = 1.0;
  int paths = 30;
  std::uint64_t seed = 0;
  int threads = 0;
};

struct EnergyStudyResult {
  std::vector<double> times;                      // t_0 = 0 .. t_N
  std::vector<std::vector<double>> per_path;      // [path][step]
  std::vector<double> mean;                       // pointwise Monte Carlo mean
};

EnergyStudyResult energy_study(const EnergyConfig& config);

// ---------------------------------------------------------------------------
// Mean-square exponential stability
// ---------------------------------------------------------------------------

struct StabilityConfig {
  NoiseLevel noise = NoiseLevel::small;
  std::vector<double> epsilons = {1e-1, 1e-2, 1e-3};
  int mesh_n = 32;
  int k_inverse = 100;
  double T = 2.0;
  int paths = 30;
  double fit_window_lo = 0.5;
  double fit_window_hi = 2.0;
  std::uint64_t seed = 0;
  int threads = 0;
};

struct StabilityCurve {
  double epsilon;
  std::vector<double> mean_sq_diff;        // E||v - w||_L2^2 at each time
  std::optional<Fit> decay_fit;            // semi-log fit over the window;
                                           // empty when the log is undefined
  double lambda = 0.0;                     // -slope when the fit exists
};

struct StabilityResult {
  std::vector<double> times;
  std::vector<StabilityCurve> curves;
  double fit_window_lo = 0.0, fit_window_hi = 0.0;
};

/// Advances paired trajectories v, w from initial data differing by
/// (eps, 0, 0) under identical increments, averages ||v-w||^2 over paths,
/// and fits exp(-lambda t) on the configured window.
StabilityResult stability_study(const StabilityConfig& config);

} // namespace sllb
