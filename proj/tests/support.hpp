// SPDX-License-Identifier: Apache-2.0
//
// Test-side oracles, independent of the library's assembly path: hat
// functions evaluated from their closed form, per-cell Gauss integration
// built directly from node coordinates, and small statistics helpers.
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "sllb/field.hpp"
#include "sllb/mesh.hpp"

namespace testsup {

// 10-point Gauss-Legendre on [0,1] (exact to degree 19).
inline const std::vector<std::pair<double, double>>& gauss10() {
  static const std::vector<std::pair<double, double>> rule = [] {
    const double x[] = {0.013046735741414, 0.067468316655508, 0.160295215850488,
                        0.283302302935376, 0.425562830509184, 0.574437169490816,
                        0.716697697064624, 0.839704784149512, 0.932531683344492,
                        0.986953264258586};
    const double w[] = {0.033335672154344, 0.074725674575290, 0.109543181257991,
                        0.134633359654998, 0.147762112357376, 0.147762112357376,
                        0.134633359654998, 0.109543181257991, 0.074725674575290,
                        0.033335672154344};
    std::vector<std::pair<double, double>> r;
    for (int i = 0; i < 10; ++i) r.emplace_back(x[i], w[i]);
    return r;
  }();
  return rule;
}

// Hat function of node i on a uniform 1D mesh, from the closed form.
inline double hat1d(const sllb::Mesh& mesh, int i, double x) {
  const double h = mesh.spacing();
  return std::max(0.0, 1.0 - std::abs(x - i * h) / h);
}

// P1 interpolant value of a field at x in [0,1] (1D), from the closed form.
inline Eigen::Vector3d eval1d(const sllb::FeField& u, double x) {
  const sllb::Mesh& mesh = *u.mesh();
  Eigen::Vector3d v = Eigen::Vector3d::Zero();
  for (int i = 0; i < mesh.n_nodes(); ++i) v += hat1d(mesh, i, x) * u.at(i);
  return v;
}

// Integral over [0,1] of a scalar integrand, per-cell 10-point Gauss so that
// hat-function kinks land on panel boundaries. Cells of the given mesh are
// subdivided `refine` times.
inline double integrate1d(const sllb::Mesh& mesh,
                          const std::function<double(double)>& f,
                          int refine = 1) {
  const int panels = mesh.resolution() * refine;
  const double w = 1.0 / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p)
    for (const auto& [t, wt] : gauss10()) total += w * wt * f((p + t) * w);
  return total;
}

// Same on the unit square, aligned with the structured triangulation's
// cells; integrates each square cell by a tensor Gauss rule, splitting it
// along the diagonal so piecewise-linear kinks are respected.
inline double integrate2d(const sllb::Mesh& mesh,
                          const std::function<double(double, double)>& f) {
  const int n = mesh.resolution();
  const double h = 1.0 / n;
  double total = 0.0;
  // map the unit square rule onto each triangle via the Duffy split
  for (int cy = 0; cy < n; ++cy)
    for (int cx = 0; cx < n; ++cx)
      for (const auto& [a, wa] : gauss10())
        for (const auto& [b, wb] : gauss10()) {
          // lower triangle (t <= s): (s, t) = (a, a b); jacobian a
          double s = a, t = a * b;
          total += wa * wb * a * h * h * f((cx + s) * h, (cy + t) * h);
          // upper triangle (t >= s): (s, t) = (a b, a)
          s = a * b;
          t = a;
          total += wa * wb * a * h * h * f((cx + s) * h, (cy + t) * h);
        }
  return total;
}

inline std::mt19937_64& rng(std::uint64_t seed = 0xC0FFEE) {
  static std::mt19937_64 gen(seed);
  return gen;
}

// Random field with entries in [-1, 1].
inline sllb::FeField random_field(const sllb::MeshPtr& mesh,
                                  std::mt19937_64& gen) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  sllb::FeField f(mesh);
  for (int i = 0; i < f.values().size(); ++i) f.values()[i] = dist(gen);
  return f;
}

// Kolmogorov-Smirnov statistic of samples against the standard normal.
inline double ks_statistic_normal(std::vector<double> samples) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (size_t i = 0; i < samples.size(); ++i) {
    const double cdf = 0.5 * std::erfc(-samples[i] / std::sqrt(2.0));
    d = std::max(d, std::abs((i + 1) / n - cdf));
    d = std::max(d, std::abs(cdf - i / n));
  }
  return d;
}

} // namespace testsup
