// SPDX-License-Identifier: Apache-2.0
#include "sllb/mesh.hpp"

#include <stdexcept>

namespace sllb {

namespace {

// Rotate by +90 degrees; gradient of the P1 basis at vertex i of a CCW
// triangle (p0,p1,p2) is rot90(p[i+2] - p[i+1]) / (2 area).
Eigen::Vector2d rot90(const Eigen::Vector2d& v) { return {-v.y(), v.x()}; }

} // namespace

std::shared_ptr<const Mesh> Mesh::interval(int n_cells) {
  if (n_cells < 1)
    throw std::invalid_argument("Mesh::interval: n_cells must be >= 1");

  auto mesh = std::shared_ptr<Mesh>(new Mesh());
  mesh->dim_ = 1;
  mesh->resolution_ = n_cells;
  mesh->h_ = 1.0 / n_cells;

  mesh->nodes_.reserve(n_cells + 1);
  for (int i = 0; i <= n_cells; ++i)
    mesh->nodes_.emplace_back(i * mesh->h_, 0.0);

  mesh->n_elems_ = static_cast<size_t>(n_cells);
  mesh->connectivity_.reserve(2 * n_cells);
  mesh->measures_.reserve(n_cells);
  mesh->gradients_.reserve(2 * n_cells);
  const double inv_h = 1.0 / mesh->h_;
  for (int e = 0; e < n_cells; ++e) {
    mesh->connectivity_.push_back(e);
    mesh->connectivity_.push_back(e + 1);
    mesh->measures_.push_back(mesh->h_);
    mesh->gradients_.emplace_back(-inv_h, 0.0);
    mesh->gradients_.emplace_back(inv_h, 0.0);
  }
  return mesh;
}

std::shared_ptr<const Mesh> Mesh::unit_square(int n_per_side) {
  if (n_per_side < 1)
    throw std::invalid_argument("Mesh::unit_square: n_per_side must be >= 1");

  auto mesh = std::shared_ptr<Mesh>(new Mesh());
  const int n = n_per_side;
  mesh->dim_ = 2;
  mesh->resolution_ = n;
  mesh->h_ = 1.0 / n;

  mesh->nodes_.reserve(static_cast<size_t>(n + 1) * (n + 1));
  for (int iy = 0; iy <= n; ++iy)
    for (int ix = 0; ix <= n; ++ix)
      mesh->nodes_.emplace_back(ix * mesh->h_, iy * mesh->h_);

  auto node_id = [n](int ix, int iy) { return iy * (n + 1) + ix; };

  mesh->n_elems_ = 2 * static_cast<size_t>(n) * n;
  mesh->connectivity_.reserve(3 * mesh->n_elems_);
  mesh->measures_.reserve(mesh->n_elems_);
  mesh->gradients_.reserve(3 * mesh->n_elems_);

  auto add_triangle = [&](int a, int b, int c) {
    mesh->connectivity_.push_back(a);
    mesh->connectivity_.push_back(b);
    mesh->connectivity_.push_back(c);
    const Eigen::Vector2d& p0 = mesh->nodes_[a];
    const Eigen::Vector2d& p1 = mesh->nodes_[b];
    const Eigen::Vector2d& p2 = mesh->nodes_[c];
    const double two_area =
        (p1 - p0).x() * (p2 - p0).y() - (p1 - p0).y() * (p2 - p0).x();
    mesh->measures_.push_back(0.5 * two_area);
    mesh->gradients_.push_back(rot90(p2 - p1) / two_area);
    mesh->gradients_.push_back(rot90(p0 - p2) / two_area);
    mesh->gradients_.push_back(rot90(p1 - p0) / two_area);
  };

  // Every cell split along the lower-left to upper-right diagonal, both
  // triangles counter-clockwise.
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix) {
      const int ll = node_id(ix, iy);
      const int lr = node_id(ix + 1, iy);
      const int ur = node_id(ix + 1, iy + 1);
      const int ul = node_id(ix, iy + 1);
      add_triangle(ll, lr, ur);
      add_triangle(ll, ur, ul);
    }
  return mesh;
}

int refinement_factor(const Mesh& coarse, const Mesh& fine) {
  if (coarse.dim() != fine.dim())
    throw std::invalid_argument("refinement_factor: dimension mismatch");
  if (fine.resolution() % coarse.resolution() != 0)
    throw std::invalid_argument(
        "refinement_factor: fine resolution is not a multiple of the coarse one");
  return fine.resolution() / coarse.resolution();
}

} // namespace sllb
