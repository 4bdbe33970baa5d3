// SPDX-License-Identifier: Apache-2.0
#include "sllb/fem.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "sllb/quadrature.hpp"

namespace sllb {

namespace {

using Trip = Eigen::Triplet<double>;

// Quadrature degrees fixed per term; every integrand below is a polynomial
// within its rule's exactness, so assembled operators are quadrature-exact.
constexpr int kMassDegree = 2;        // hat x hat
constexpr int kCubicDegree = 4;       // |w|^2 hat hat
constexpr int kCrossLoadDegree = 4;   // (w x g) x g . hat and a x b . hat
int projection_degree(int dim) { return dim == 1 ? 9 : 6; }

void require_same_mesh(const Mesh& a, const Mesh& b, const char* where) {
  if (!same_mesh(a, b))
    throw std::invalid_argument(std::string(where) + ": field mesh mismatch");
}

Eigen::Vector3d value_at(const FeField& u, std::span<const int> nodes,
                         const QuadPoint& q) {
  Eigen::Vector3d v = Eigen::Vector3d::Zero();
  for (size_t l = 0; l < nodes.size(); ++l) v += q.lambda[l] * u.at(nodes[l]);
  return v;
}

Eigen::Matrix3d skew(const Eigen::Vector3d& w) {
  Eigen::Matrix3d x;
  x << 0.0, -w.z(), w.y(),
       w.z(), 0.0, -w.x(),
      -w.y(), w.x(), 0.0;
  return x;
}

} // namespace

SparseMat assemble_mass(const Mesh& mesh) {
  const int nv = mesh.nodes_per_element();
  const auto rule = quad_rule(mesh.dim(), kMassDegree);
  std::vector<Trip> trips;
  trips.reserve(static_cast<size_t>(mesh.n_elements()) * nv * nv);
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const auto nodes = mesh.element(e);
    const double meas = mesh.measure(e);
    for (int i = 0; i < nv; ++i)
      for (int j = 0; j < nv; ++j) {
        double v = 0.0;
        for (const auto& q : rule) v += q.weight * q.lambda[i] * q.lambda[j];
        trips.emplace_back(nodes[i], nodes[j], meas * v);
      }
  }
  SparseMat m(mesh.n_nodes(), mesh.n_nodes());
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

SparseMat assemble_stiffness(const Mesh& mesh) {
  const int nv = mesh.nodes_per_element();
  std::vector<Trip> trips;
  trips.reserve(static_cast<size_t>(mesh.n_elements()) * nv * nv);
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const auto nodes = mesh.element(e);
    const double meas = mesh.measure(e);
    for (int i = 0; i < nv; ++i)
      for (int j = 0; j < nv; ++j)
        trips.emplace_back(
            nodes[i], nodes[j],
            meas * mesh.basis_gradient(e, i).dot(mesh.basis_gradient(e, j)));
  }
  SparseMat s(mesh.n_nodes(), mesh.n_nodes());
  s.setFromTriplets(trips.begin(), trips.end());
  return s;
}

SparseMat assemble_cross_convection(const Mesh& mesh, const FeField& w) {
  require_same_mesh(mesh, *w.mesh(), "assemble_cross_convection");
  const int nv = mesh.nodes_per_element();
  std::vector<Trip> trips;
  trips.reserve(static_cast<size_t>(mesh.n_elements()) * nv * nv * 6);
  // The integrand is linear in w (gradients are constant), so the element
  // integral of w is exact: measure times the vertex average.
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const auto nodes = mesh.element(e);
    Eigen::Vector3d w_int = Eigen::Vector3d::Zero();
    for (int l = 0; l < nv; ++l) w_int += w.at(nodes[l]);
    w_int *= mesh.measure(e) / nv;
    const Eigen::Matrix3d x = skew(w_int);
    for (int i = 0; i < nv; ++i)
      for (int j = 0; j < nv; ++j) {
        const double gdot =
            mesh.basis_gradient(e, i).dot(mesh.basis_gradient(e, j));
        for (int a = 0; a < 3; ++a)
          for (int c = 0; c < 3; ++c) {
            if (a == c) continue;
            trips.emplace_back(3 * nodes[i] + a, 3 * nodes[j] + c,
                               gdot * x(a, c));
          }
      }
  }
  SparseMat op(3 * mesh.n_nodes(), 3 * mesh.n_nodes());
  op.setFromTriplets(trips.begin(), trips.end());
  return op;
}

SparseMat assemble_cubic_weight(const Mesh& mesh, const FeField& w) {
  require_same_mesh(mesh, *w.mesh(), "assemble_cubic_weight");
  const int nv = mesh.nodes_per_element();
  const auto rule = quad_rule(mesh.dim(), kCubicDegree);
  std::vector<Trip> trips;
  trips.reserve(static_cast<size_t>(mesh.n_elements()) * nv * nv);
  std::array<double, 9> local{};
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const auto nodes = mesh.element(e);
    const double meas = mesh.measure(e);
    local.fill(0.0);
    for (const auto& q : rule) {
      const double wsq = q.weight * value_at(w, nodes, q).squaredNorm();
      for (int i = 0; i < nv; ++i)
        for (int j = 0; j < nv; ++j)
          local[i * nv + j] += wsq * q.lambda[i] * q.lambda[j];
    }
    for (int i = 0; i < nv; ++i)
      for (int j = 0; j < nv; ++j)
        trips.emplace_back(nodes[i], nodes[j], meas * local[i * nv + j]);
  }
  SparseMat op(mesh.n_nodes(), mesh.n_nodes());
  op.setFromTriplets(trips.begin(), trips.end());
  return op;
}

namespace {

// Shared kernel of the 3x3-block mass-type assemblies: block(q) is the
// pointwise linear map tested against phi_i phi_j with the degree-4 rule.
template <typename BlockFn>
SparseMat assemble_block_mass(const Mesh& mesh, BlockFn&& block) {
  const int nv = mesh.nodes_per_element();
  const auto rule = quad_rule(mesh.dim(), kCrossLoadDegree);
  std::vector<Trip> trips;
  trips.reserve(static_cast<size_t>(mesh.n_elements()) * nv * nv * 9);
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const auto nodes = mesh.element(e);
    const double meas = mesh.measure(e);
    for (const auto& q : rule) {
      const Eigen::Matrix3d b = block(nodes, q);
      for (int i = 0; i < nv; ++i)
        for (int j = 0; j < nv; ++j) {
          const double scale = meas * q.weight * q.lambda[i] * q.lambda[j];
          for (int a = 0; a < 3; ++a)
            for (int c = 0; c < 3; ++c) {
              if (b(a, c) == 0.0) continue;
              trips.emplace_back(3 * nodes[i] + a, 3 * nodes[j] + c,
                                 scale * b(a, c));
            }
        }
    }
  }
  SparseMat op(3 * mesh.n_nodes(), 3 * mesh.n_nodes());
  op.setFromTriplets(trips.begin(), trips.end());
  return op;
}

} // namespace

SparseMat assemble_cross_mass(const Mesh& mesh, const FeField& w) {
  require_same_mesh(mesh, *w.mesh(), "assemble_cross_mass");
  return assemble_block_mass(
      mesh, [&](std::span<const int> nodes, const QuadPoint& q) {
        return skew(value_at(w, nodes, q));
      });
}

SparseMat assemble_double_cross(const Mesh& mesh, const FeField& g) {
  require_same_mesh(mesh, *g.mesh(), "assemble_double_cross");
  return assemble_block_mass(
      mesh, [&](std::span<const int> nodes, const QuadPoint& q) {
        const Eigen::Vector3d gq = value_at(g, nodes, q);
        return (gq * gq.transpose() -
                gq.squaredNorm() * Eigen::Matrix3d::Identity())
            .eval();
      });
}

namespace {

// Shared kernel of the load assemblies: accumulate integral of f(x_q).phi_i
// with f evaluated from P1 fields at the quadrature points.
template <typename PointFn>
Eigen::VectorXd assemble_load(const Mesh& mesh, int degree, PointFn&& f) {
  const int nv = mesh.nodes_per_element();
  const auto rule = quad_rule(mesh.dim(), degree);
  Eigen::VectorXd load = Eigen::VectorXd::Zero(3 * mesh.n_nodes());
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const auto nodes = mesh.element(e);
    const double meas = mesh.measure(e);
    for (const auto& q : rule) {
      const Eigen::Vector3d fx = f(nodes, q);
      for (int i = 0; i < nv; ++i)
        load.segment<3>(3 * nodes[i]) += meas * q.weight * q.lambda[i] * fx;
    }
  }
  return load;
}

} // namespace

Eigen::VectorXd assemble_cross_load(const FeField& a, const FeField& b) {
  require_same_mesh(*a.mesh(), *b.mesh(), "assemble_cross_load");
  return assemble_load(*a.mesh(), kCrossLoadDegree,
                       [&](std::span<const int> nodes, const QuadPoint& q) {
                         return value_at(a, nodes, q)
                             .cross(value_at(b, nodes, q))
                             .eval();
                       });
}

Eigen::VectorXd assemble_drift_correction(const FeField& w, const FeField& g,
                                          double gamma) {
  require_same_mesh(*w.mesh(), *g.mesh(), "assemble_drift_correction");
  const double half_gamma_sq = 0.5 * gamma * gamma;
  return assemble_load(*w.mesh(), kCrossLoadDegree,
                       [&](std::span<const int> nodes, const QuadPoint& q) {
                         const Eigen::Vector3d gq = value_at(g, nodes, q);
                         return (half_gamma_sq *
                                 value_at(w, nodes, q).cross(gq).cross(gq))
                             .eval();
                       });
}

Eigen::VectorXd assemble_diffusion_load(const FeField& w, const FeField& g,
                                        double kappa1, double gamma) {
  require_same_mesh(*w.mesh(), *g.mesh(), "assemble_diffusion_load");
  return assemble_load(*w.mesh(), kCrossLoadDegree,
                       [&](std::span<const int> nodes, const QuadPoint& q) {
                         const Eigen::Vector3d gq = value_at(g, nodes, q);
                         return (kappa1 * gq +
                                 gamma * value_at(w, nodes, q).cross(gq))
                             .eval();
                       });
}

std::pair<Eigen::VectorXd, Eigen::VectorXd>
assemble_noise_rhs(const Mesh& mesh, const FeField& w, const FeField& g,
                   double kappa1, double gamma) {
  require_same_mesh(mesh, *w.mesh(), "assemble_noise_rhs");
  return {assemble_drift_correction(w, g, gamma),
          assemble_diffusion_load(w, g, kappa1, gamma)};
}

double integrate_cross_sq(const FeField& a, const FeField& b) {
  require_same_mesh(*a.mesh(), *b.mesh(), "integrate_cross_sq");
  const Mesh& mesh = *a.mesh();
  const auto rule = quad_rule(mesh.dim(), kCrossLoadDegree);
  double total = 0.0;
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const auto nodes = mesh.element(e);
    for (const auto& q : rule)
      total += mesh.measure(e) * q.weight *
               value_at(a, nodes, q).cross(value_at(b, nodes, q)).squaredNorm();
  }
  return total;
}

SparseMat expand_blocks(const SparseMat& scalar_op) {
  std::vector<Trip> trips;
  trips.reserve(static_cast<size_t>(scalar_op.nonZeros()) * 3);
  for (int col = 0; col < scalar_op.outerSize(); ++col)
    for (SparseMat::InnerIterator it(scalar_op, col); it; ++it)
      for (int d = 0; d < 3; ++d)
        trips.emplace_back(3 * it.row() + d, 3 * it.col() + d, it.value());
  SparseMat out(3 * scalar_op.rows(), 3 * scalar_op.cols());
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

Eigen::VectorXd apply_per_component(const SparseMat& scalar_op,
                                    const Eigen::VectorXd& x) {
  Eigen::VectorXd y = Eigen::VectorXd::Zero(x.size());
  for (int col = 0; col < scalar_op.outerSize(); ++col)
    for (SparseMat::InnerIterator it(scalar_op, col); it; ++it)
      y.segment<3>(3 * it.row()) += it.value() * x.segment<3>(3 * it.col());
  return y;
}

double dot_per_component(const SparseMat& scalar_op, const Eigen::VectorXd& x,
                         const Eigen::VectorXd& y) {
  double acc = 0.0;
  for (int col = 0; col < scalar_op.outerSize(); ++col)
    for (SparseMat::InnerIterator it(scalar_op, col); it; ++it)
      acc += it.value() *
             x.segment<3>(3 * it.row()).dot(y.segment<3>(3 * it.col()));
  return acc;
}

FemOperators::FemOperators(MeshPtr mesh)
    : mesh_(std::move(mesh)),
      mass_(assemble_mass(*mesh_)),
      stiffness_(assemble_stiffness(*mesh_)) {
  mass_ldlt_.compute(mass_);
  if (mass_ldlt_.info() != Eigen::Success)
    throw std::runtime_error("FemOperators: mass factorization failed");
  if (mesh_->dim() == 1)
    dense_laplacian_ = mass_ldlt_.solve(Eigen::MatrixXd(-stiffness_));
}

const Eigen::MatrixXd& FemOperators::dense_discrete_laplacian() const {
  if (mesh_->dim() != 1)
    throw std::logic_error(
        "dense_discrete_laplacian: available on interval meshes only");
  return dense_laplacian_;
}

Eigen::VectorXd FemOperators::mass_solve(const Eigen::VectorXd& rhs,
                                         double tol) const {
  const int n = mesh_->n_nodes();
  Eigen::VectorXd out(rhs.size());
  Eigen::VectorXd comp(n), sol(n);
  for (int d = 0; d < 3; ++d) {
    for (int i = 0; i < n; ++i) comp[i] = rhs[3 * i + d];
    sol = mass_ldlt_.solve(comp);
    const double bnorm = comp.norm();
    if (bnorm > 0.0) {
      const double rel = (mass_ * sol - comp).norm() / bnorm;
      if (rel > tol)
        throw std::runtime_error("FemOperators::mass_solve: residual " +
                                 std::to_string(rel) + " exceeds tolerance");
    } else {
      sol.setZero();
    }
    for (int i = 0; i < n; ++i) out[3 * i + d] = sol[i];
  }
  return out;
}

FeField FemOperators::l2_project(const VectorFn& f, double tol) const {
  const Mesh& mesh = *mesh_;
  const auto rule = quad_rule(mesh.dim(), projection_degree(mesh.dim()));
  Eigen::VectorXd load = Eigen::VectorXd::Zero(3 * mesh.n_nodes());
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const auto nodes = mesh.element(e);
    const double meas = mesh.measure(e);
    for (const auto& q : rule) {
      Eigen::Vector2d x = Eigen::Vector2d::Zero();
      for (size_t l = 0; l < nodes.size(); ++l)
        x += q.lambda[l] * mesh.node(nodes[l]);
      const Eigen::Vector3d fx = f(x);
      for (size_t l = 0; l < nodes.size(); ++l)
        load.segment<3>(3 * nodes[l]) += meas * q.weight * q.lambda[l] * fx;
    }
  }
  return FeField(mesh_, mass_solve(load, tol));
}

FeField FemOperators::discrete_laplacian(const FeField& v, double tol) const {
  require_same_mesh(*mesh_, *v.mesh(), "discrete_laplacian");
  const Eigen::VectorXd rhs = -apply_per_component(stiffness_, v.values());
  return FeField(mesh_, mass_solve(rhs, tol));
}

Norms FemOperators::norms(const FeField& v) const {
  require_same_mesh(*mesh_, *v.mesh(), "norms");
  Norms out{};
  out.l2 = std::sqrt(dot_per_component(mass_, v.values(), v.values()));
  out.h1_semi =
      std::sqrt(dot_per_component(stiffness_, v.values(), v.values()));
  const Mesh& mesh = *mesh_;
  const auto rule = quad_rule(mesh.dim(), kCubicDegree);
  double l4_pow4 = 0.0;
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const auto nodes = mesh.element(e);
    for (const auto& q : rule) {
      const double sq = value_at(v, nodes, q).squaredNorm();
      l4_pow4 += mesh.measure(e) * q.weight * sq * sq;
    }
  }
  out.l4 = std::pow(l4_pow4, 0.25);
  return out;
}

double FemOperators::l2_norm(const FeField& v) const {
  return std::sqrt(dot_per_component(mass_, v.values(), v.values()));
}

} // namespace sllb
