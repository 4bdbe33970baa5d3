// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "sllb/field.hpp"
#include "sllb/params.hpp"

namespace sllb {

enum class NoiseLevel { small, moderate, large };

NoiseLevel noise_level_from_string(const std::string& s);
std::string to_string(NoiseLevel level);

/// A named experiment setup: domain dimension, physical coefficients,
/// closed-form initial data and noise coefficient field, and the scheme the
/// experiments default to on it.
struct SimulationSetup {
  std::string name;
  int dim = 1;
  double kappa1 = 1.0, gamma = 1.0, kappa2 = 1.0, mu = 1.0;
  VectorFn initial_data;
  VectorFn noise_coefficient;
  SchemeKind default_scheme = SchemeKind::semi_implicit;

  SchemeParams make_params(double k, double T, SchemeKind scheme) const;
};

/// 1D run on the unit interval: kappa1=0.2, gamma=4.0, kappa2=0.5, mu=1.0,
/// u0 = (0, cos 2 pi x, sin 2 pi x), g = (0.2, 0.1(1+x), 0), implicit scheme.
SimulationSetup simulation1();

/// 2D run on the unit square: kappa1=0.5, gamma=2.0, kappa2=0.2, mu=1.0,
/// u0 = (y, -x, 0), g = (0.5(1+x), 0.25(1+y), 0), semi-implicit scheme.
SimulationSetup simulation2();

/// Stability run: simulation-1 coefficients with the semi-implicit scheme
/// and a selectable noise amplitude; the perturbed twin trajectory starts
/// from u0 + (eps, 0, 0).
SimulationSetup simulation3(NoiseLevel level = NoiseLevel::small);

/// Noise coefficient presets of the stability experiment:
/// small (0.2, 0.1(1+x), 0), moderate (0.5, 0.3(1+x), 0),
/// large (2.0, 1.5(1+x), 0).
VectorFn stability_noise(NoiseLevel level);

} // namespace sllb
