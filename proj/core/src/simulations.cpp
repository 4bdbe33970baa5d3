// SPDX-License-Identifier: Apache-2.0
#include "sllb/simulations.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sllb {

NoiseLevel noise_level_from_string(const std::string& s) {
  if (s == "small") return NoiseLevel::small;
  if (s == "moderate") return NoiseLevel::moderate;
  if (s == "large") return NoiseLevel::large;
  throw std::invalid_argument("unknown noise level '" + s + "'");
}

std::string to_string(NoiseLevel level) {
  switch (level) {
    case NoiseLevel::small: return "small";
    case NoiseLevel::moderate: return "moderate";
    default: return "large";
  }
}

SchemeParams SimulationSetup::make_params(double k, double T,
                                          SchemeKind scheme) const {
  SchemeParams p;
  p.kappa1 = kappa1;
  p.gamma = gamma;
  p.kappa2 = kappa2;
  p.mu = mu;
  p.k = k;
  p.T = T;
  p.scheme = scheme;
  return p;
}

namespace {

VectorFn circle_initial_data() {
  return [](const Eigen::Vector2d& p) {
    const double a = 2.0 * std::numbers::pi * p.x();
    return Eigen::Vector3d(0.0, std::cos(a), std::sin(a));
  };
}

} // namespace

SimulationSetup simulation1() {
  SimulationSetup s;
  s.name = "sim1";
  s.dim = 1;
  s.kappa1 = 0.2;
  s.gamma = 4.0;
  s.kappa2 = 0.5;
  s.mu = 1.0;
  s.initial_data = circle_initial_data();
  s.noise_coefficient = [](const Eigen::Vector2d& p) {
    return Eigen::Vector3d(0.2, 0.1 * (1.0 + p.x()), 0.0);
  };
  s.default_scheme = SchemeKind::implicit;
  return s;
}

SimulationSetup simulation2() {
  SimulationSetup s;
  s.name = "sim2";
  s.dim = 2;
  s.kappa1 = 0.5;
  s.gamma = 2.0;
  s.kappa2 = 0.2;
  s.mu = 1.0;
  s.initial_data = [](const Eigen::Vector2d& p) {
    return Eigen::Vector3d(p.y(), -p.x(), 0.0);
  };
  s.noise_coefficient = [](const Eigen::Vector2d& p) {
    return Eigen::Vector3d(0.5 * (1.0 + p.x()), 0.25 * (1.0 + p.y()), 0.0);
  };
  s.default_scheme = SchemeKind::semi_implicit;
  return s;
}

VectorFn stability_noise(NoiseLevel level) {
  switch (level) {
    case NoiseLevel::small:
      return [](const Eigen::Vector2d& p) {
        return Eigen::Vector3d(0.2, 0.1 * (1.0 + p.x()), 0.0);
      };
    case NoiseLevel::moderate:
      return [](const Eigen::Vector2d& p) {
        return Eigen::Vector3d(0.5, 0.3 * (1.0 + p.x()), 0.0);
      };
    default:
      return [](const Eigen::Vector2d& p) {
        return Eigen::Vector3d(2.0, 1.5 * (1.0 + p.x()), 0.0);
      };
  }
}

SimulationSetup simulation3(NoiseLevel level) {
  SimulationSetup s = simulation1();
  s.name = "sim3";
  s.noise_coefficient = stability_noise(level);
  s.default_scheme = SchemeKind::semi_implicit;
  return s;
}

} // namespace sllb
