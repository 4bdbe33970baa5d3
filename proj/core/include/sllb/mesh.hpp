// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <array>
#include <memory>
#include <span>
#include <vector>

namespace sllb {

/// Uniform simplicial mesh of the unit domain: a partition of [0,1] into
/// equal sub-intervals (dim 1), or a structured triangulation of the unit
/// square where every grid cell is split along its lower-left to upper-right
/// diagonal (dim 2). The fixed diagonal direction makes meshes with
/// resolutions n and m*n nested, which the pathwise error evaluation relies
/// on. Meshes are immutable after construction and safe to share across
/// threads.
class Mesh {
public:
  /// Partition of [0,1] into n_cells equal intervals. Throws
  /// std::invalid_argument if n_cells < 1.
  static std::shared_ptr<const Mesh> interval(int n_cells);

  /// Structured triangulation of [0,1]^2 with n_per_side cells per side,
  /// (n+1)^2 nodes and 2 n^2 triangles. Throws if n_per_side < 1.
  static std::shared_ptr<const Mesh> unit_square(int n_per_side);

  int dim() const { return dim_; }
  /// Grid spacing: 1/n_cells resp. 1/n_per_side.
  double spacing() const { return h_; }
  /// Cells per side: n_cells (1D) or n_per_side (2D).
  int resolution() const { return resolution_; }

  int n_nodes() const { return static_cast<int>(nodes_.size()); }
  int n_elements() const { return static_cast<int>(n_elems_); }
  int nodes_per_element() const { return dim_ + 1; }

  /// Node coordinate; the y component is 0 on interval meshes.
  const Eigen::Vector2d& node(int i) const { return nodes_[i]; }

  /// Vertex indices of element e (2 for intervals, 3 for triangles,
  /// counter-clockwise).
  std::span<const int> element(int e) const {
    return {&connectivity_[static_cast<size_t>(e) * nodes_per_element()],
            static_cast<size_t>(nodes_per_element())};
  }

  /// Length/area of element e.
  double measure(int e) const { return measures_[e]; }

  /// Gradient of the local P1 basis function `local` on element e
  /// (constant per element; y component 0 in 1D).
  const Eigen::Vector2d& basis_gradient(int e, int local) const {
    return gradients_[static_cast<size_t>(e) * nodes_per_element() + local];
  }

  /// True if both meshes discretize the same domain with the same topology
  /// and resolution.
  friend bool same_mesh(const Mesh& a, const Mesh& b) {
    return a.dim_ == b.dim_ && a.resolution_ == b.resolution_;
  }

private:
  Mesh() = default;

  int dim_ = 0;
  int resolution_ = 0;
  double h_ = 0.0;
  size_t n_elems_ = 0;
  std::vector<Eigen::Vector2d> nodes_;
  std::vector<int> connectivity_;
  std::vector<double> measures_;
  std::vector<Eigen::Vector2d> gradients_;
};

using MeshPtr = std::shared_ptr<const Mesh>;

/// Refinement factor fine/coarse for a nested pair. Throws
/// std::invalid_argument when the pair is not nested (different dimension,
/// or fine resolution not an integer multiple of the coarse one).
int refinement_factor(const Mesh& coarse, const Mesh& fine);

} // namespace sllb
