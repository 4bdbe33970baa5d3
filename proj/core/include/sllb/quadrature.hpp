// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <span>

namespace sllb {

/// One quadrature node on the reference simplex, stored in barycentric
/// coordinates so that a P1 function evaluates as sum(lambda[i] * v[i]).
/// Weights are normalized to sum to 1; integrals are weight * measure(e).
struct QuadPoint {
  std::array<double, 3> lambda;  // lambda[2] == 0 on intervals
  double weight;
};

/// Smallest stored rule on the dim-simplex exact for polynomials of the
/// requested total degree. Available degrees: 1..9 (1D Gauss-Legendre),
/// 1..6 (triangle rules). Throws std::invalid_argument beyond that.
std::span<const QuadPoint> quad_rule(int dim, int degree);

} // namespace sllb
