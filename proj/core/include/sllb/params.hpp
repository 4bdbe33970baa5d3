// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <string>

namespace sllb {

enum class SchemeKind { semi_implicit, implicit };

std::string to_string(SchemeKind k);
SchemeKind scheme_from_string(const std::string& s);

/// Physical coefficients, time discretization, and solver controls of a run.
struct SchemeParams {
  double kappa1 = 1.0;
  double gamma = 1.0;
  double kappa2 = 1.0;
  double mu = 1.0;

  double k = 0.0;  // time step
  double T = 0.0;  // horizon
  SchemeKind scheme = SchemeKind::semi_implicit;

  double picard_tol = 1e-10;
  int picard_max = 100;
  double linsolve_tol = 1e-12;

  int n_steps() const { return static_cast<int>(std::floor(T / k)); }

  /// Throws std::invalid_argument unless k > 0, T >= k and all physical
  /// coefficients are positive.
  void validate() const;
};

} // namespace sllb
