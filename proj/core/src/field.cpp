// SPDX-License-Identifier: Apache-2.0
#include "sllb/field.hpp"

#include <stdexcept>

namespace sllb {

FeField::FeField(MeshPtr mesh)
    : mesh_(std::move(mesh)),
      values_(Eigen::VectorXd::Zero(3 * mesh_->n_nodes())) {}

FeField::FeField(MeshPtr mesh, Eigen::VectorXd values)
    : mesh_(std::move(mesh)), values_(std::move(values)) {
  if (values_.size() != 3 * mesh_->n_nodes())
    throw std::invalid_argument("FeField: value vector size mismatch");
}

FeField FeField::interpolate(const MeshPtr& mesh, const VectorFn& f) {
  FeField field(mesh);
  for (int i = 0; i < mesh->n_nodes(); ++i) field.set(i, f(mesh->node(i)));
  return field;
}

namespace {

// P1 value of the coarse function at local cell coordinates. The diagonal
// convention is shared across levels, so the coarse diagonal is a union of
// fine edges and evaluation at fine nodes reproduces the function exactly.
Eigen::Vector3d eval_in_square(const FeField& u, int n, int cx, int cy,
                               double s, double t) {
  auto id = [n](int ix, int iy) { return iy * (n + 1) + ix; };
  const Eigen::Vector3d v00 = u.at(id(cx, cy));
  const Eigen::Vector3d v10 = u.at(id(cx + 1, cy));
  const Eigen::Vector3d v11 = u.at(id(cx + 1, cy + 1));
  const Eigen::Vector3d v01 = u.at(id(cx, cy + 1));
  if (t <= s)  // lower-right triangle of the ll->ur split
    return v00 + s * (v10 - v00) + t * (v11 - v10);
  return v00 + s * (v11 - v01) + t * (v01 - v00);
}

} // namespace

FeField prolong(const FeField& coarse, const MeshPtr& fine_mesh) {
  const Mesh& cm = *coarse.mesh();
  const Mesh& fm = *fine_mesh;
  const int factor = refinement_factor(cm, fm);
  FeField fine(fine_mesh);

  if (cm.dim() == 1) {
    const int n_fine = fm.resolution();
    for (int i = 0; i <= n_fine; ++i) {
      int cell = i / factor;
      int rem = i % factor;
      if (cell == cm.resolution()) {  // right endpoint
        cell -= 1;
        rem = factor;
      }
      const double t = static_cast<double>(rem) / factor;
      fine.set(i, (1.0 - t) * coarse.at(cell) + t * coarse.at(cell + 1));
    }
    return fine;
  }

  const int n_fine = fm.resolution();
  const int n_coarse = cm.resolution();
  for (int iy = 0; iy <= n_fine; ++iy)
    for (int ix = 0; ix <= n_fine; ++ix) {
      int cx = ix / factor, rx = ix % factor;
      int cy = iy / factor, ry = iy % factor;
      if (cx == n_coarse) { cx -= 1; rx = factor; }
      if (cy == n_coarse) { cy -= 1; ry = factor; }
      const double s = static_cast<double>(rx) / factor;
      const double t = static_cast<double>(ry) / factor;
      fine.set(iy * (n_fine + 1) + ix, eval_in_square(coarse, n_coarse, cx, cy, s, t));
    }
  return fine;
}

} // namespace sllb
