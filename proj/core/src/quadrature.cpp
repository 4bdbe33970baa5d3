// SPDX-License-Identifier: Apache-2.0
#include "sllb/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace sllb {

namespace {

std::vector<QuadPoint> gauss_interval(int n_points) {
  // Gauss-Legendre abscissae on [-1,1], mapped to barycentric (1-t, t).
  std::vector<double> x, w;
  switch (n_points) {
    case 1:
      x = {0.0};
      w = {2.0};
      break;
    case 2:
      x = {-1.0 / std::sqrt(3.0), 1.0 / std::sqrt(3.0)};
      w = {1.0, 1.0};
      break;
    case 3:
      x = {-std::sqrt(0.6), 0.0, std::sqrt(0.6)};
      w = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
      break;
    case 5:
      x = {-0.906179845938663992797627, -0.538469310105683091036314, 0.0,
           0.538469310105683091036314, 0.906179845938663992797627};
      w = {0.236926885056189087514264, 0.478628670499366468041292,
           0.568888888888888888888889, 0.478628670499366468041292,
           0.236926885056189087514264};
      break;
    default:
      throw std::invalid_argument("gauss_interval: unsupported point count");
  }
  std::vector<QuadPoint> rule(n_points);
  for (int i = 0; i < n_points; ++i) {
    const double t = 0.5 * (x[i] + 1.0);
    rule[i] = {{1.0 - t, t, 0.0}, 0.5 * w[i]};
  }
  return rule;
}

std::vector<QuadPoint> triangle_rule(int degree) {
  std::vector<QuadPoint> rule;
  auto push3 = [&rule](double a, double w) {
    const double b = 1.0 - 2.0 * a;
    rule.push_back({{b, a, a}, w});
    rule.push_back({{a, b, a}, w});
    rule.push_back({{a, a, b}, w});
  };
  auto push6 = [&rule](double a, double b, double w) {
    const double c = 1.0 - a - b;
    rule.push_back({{a, b, c}, w});
    rule.push_back({{a, c, b}, w});
    rule.push_back({{b, a, c}, w});
    rule.push_back({{b, c, a}, w});
    rule.push_back({{c, a, b}, w});
    rule.push_back({{c, b, a}, w});
  };
  switch (degree) {
    case 1:
      rule.push_back({{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}, 1.0});
      break;
    case 2:
      // Mid-edge rule.
      push3(0.5, 1.0 / 3.0);
      break;
    case 4:
      push3(0.445948490915965, 0.223381589678011);
      push3(0.091576213509771, 0.109951743655322);
      break;
    case 6:
      push3(0.249286745170910, 0.116786275726379);
      push3(0.063089014491502, 0.050844906370207);
      push6(0.310352451033785, 0.053145049844816, 0.082851075618374);
      break;
    default:
      throw std::invalid_argument("triangle_rule: unsupported degree");
  }
  return rule;
}

} // namespace

std::span<const QuadPoint> quad_rule(int dim, int degree) {
  if (dim == 1) {
    static const auto g1 = gauss_interval(1);
    static const auto g2 = gauss_interval(2);
    static const auto g3 = gauss_interval(3);
    static const auto g5 = gauss_interval(5);
    if (degree <= 1) return g1;
    if (degree <= 3) return g2;
    if (degree <= 5) return g3;
    if (degree <= 9) return g5;
    throw std::invalid_argument("quad_rule: 1D degree > 9 not available");
  }
  if (dim == 2) {
    static const auto t1 = triangle_rule(1);
    static const auto t2 = triangle_rule(2);
    static const auto t4 = triangle_rule(4);
    static const auto t6 = triangle_rule(6);
    if (degree <= 1) return t1;
    if (degree <= 2) return t2;
    if (degree <= 4) return t4;
    if (degree <= 6) return t6;
    throw std::invalid_argument("quad_rule: 2D degree > 6 not available");
  }
  throw std::invalid_argument("quad_rule: dim must be 1 or 2");
}

} // namespace sllb
