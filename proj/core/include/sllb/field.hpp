// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <functional>

#include "sllb/mesh.hpp"

namespace sllb {

/// Closed-form coefficient or initial-data function: domain point (y ignored
/// in 1D) to an R^3 value.
using VectorFn = std::function<Eigen::Vector3d(const Eigen::Vector2d&)>;

/// Continuous piecewise-linear vector field: one R^3 value per mesh node,
/// stored interleaved as [u0_x, u0_y, u0_z, u1_x, ...].
class FeField {
public:
  FeField() = default;
  /// Zero field on the given mesh.
  explicit FeField(MeshPtr mesh);
  FeField(MeshPtr mesh, Eigen::VectorXd values);

  const MeshPtr& mesh() const { return mesh_; }
  int n_nodes() const { return mesh_ ? mesh_->n_nodes() : 0; }

  Eigen::VectorXd& values() { return values_; }
  const Eigen::VectorXd& values() const { return values_; }

  Eigen::Vector3d at(int node) const { return values_.segment<3>(3 * node); }
  void set(int node, const Eigen::Vector3d& v) { values_.segment<3>(3 * node) = v; }

  /// Nodal interpolant of f (exact for functions already in the P1 space).
  static FeField interpolate(const MeshPtr& mesh, const VectorFn& f);

private:
  MeshPtr mesh_;
  Eigen::VectorXd values_;
};

/// Exact transfer of a P1 field to a nested finer mesh: evaluates the coarse
/// piecewise-linear function at the fine nodes, so the result represents the
/// same function. Throws std::invalid_argument for non-nested pairs.
FeField prolong(const FeField& coarse, const MeshPtr& fine_mesh);

} // namespace sllb
