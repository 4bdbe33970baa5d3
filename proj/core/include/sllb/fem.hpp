// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <memory>
#include <utility>

#include "sllb/field.hpp"
#include "sllb/mesh.hpp"

namespace sllb {

using SparseMat = Eigen::SparseMatrix<double>;

// ---------------------------------------------------------------------------
// Assembly of the P1 operators appearing in the time-stepping schemes.
//
// Scalar-block operators (mass, stiffness, cubic weight) are n x n and act
// identically on each of the three vector components; the cross-product
// coupling is a full 3n x 3n operator with 3x3 node blocks, indexed
// interleaved as in FeField. Quadrature degrees are fixed per term so that
// every integrand is integrated exactly (no mass lumping): the per-step
// energy identity checks depend on it.
// ---------------------------------------------------------------------------

/// L2 Gram matrix of the hat functions, integrated exactly.
SparseMat assemble_mass(const Mesh& mesh);

/// Gram matrix of the hat-function gradients. Constants are in the kernel.
SparseMat assemble_stiffness(const Mesh& mesh);

/// Coupling operator C(w) with (C(w) v, phi) = <w x d_i v, d_i phi> summed
/// over derivative directions. Exactly skew-symmetric entrywise: the
/// integrand is linear in w and integrated exactly.
SparseMat assemble_cross_convection(const Mesh& mesh, const FeField& w);

/// Weighted mass operator A(w) with (A(w) v, phi) = <|w|^2 v, phi>,
/// symmetric positive semi-definite, degree-4-exact quadrature.
SparseMat assemble_cubic_weight(const Mesh& mesh, const FeField& w);

/// Mass-type cross operator Y(w) with (Y(w) v, phi) = <w x v, phi>.
SparseMat assemble_cross_mass(const Mesh& mesh, const FeField& w);

/// Symmetric negative semi-definite operator D(g) with
/// (D(g) v, phi) = <(v x g) x g, phi>; pointwise (v x g) x g =
/// (v . g) g - |g|^2 v.
SparseMat assemble_double_cross(const Mesh& mesh, const FeField& g);

/// Load vector with entries integral of (a x b) . phi_i (degree-4 rule).
Eigen::VectorXd assemble_cross_load(const FeField& a, const FeField& b);

/// Load vector of (gamma^2 / 2) (w x g) x g against all test functions.
Eigen::VectorXd assemble_drift_correction(const FeField& w, const FeField& g,
                                          double gamma);

/// Load vector of (kappa1 g + gamma w x g) against all test functions.
Eigen::VectorXd assemble_diffusion_load(const FeField& w, const FeField& g,
                                        double kappa1, double gamma);

/// Both noise-related loads of one step: {drift correction, diffusion}.
std::pair<Eigen::VectorXd, Eigen::VectorXd>
assemble_noise_rhs(const Mesh& mesh, const FeField& w, const FeField& g,
                   double kappa1, double gamma);

/// Integral of |a x b|^2 with the same degree-4 rule as the cross loads.
double integrate_cross_sq(const FeField& a, const FeField& b);

// ---------------------------------------------------------------------------
// Scalar-block utilities (operator A applied per component).
// ---------------------------------------------------------------------------

/// Expand an n x n scalar operator to the interleaved 3n x 3n block form.
SparseMat expand_blocks(const SparseMat& scalar_op);

/// y = (A per component) x for interleaved x.
Eigen::VectorXd apply_per_component(const SparseMat& scalar_op,
                                    const Eigen::VectorXd& x);

/// x^T (A per component) y for interleaved x, y.
double dot_per_component(const SparseMat& scalar_op, const Eigen::VectorXd& x,
                         const Eigen::VectorXd& y);

struct Norms {
  double l2;
  double h1_semi;
  double l4;
};

// ---------------------------------------------------------------------------
// Per-mesh operator cache: mass/stiffness assembled once, mass Cholesky for
// projections and the discrete Laplacian. Immutable after construction.
// ---------------------------------------------------------------------------
class FemOperators {
public:
  explicit FemOperators(MeshPtr mesh);

  const MeshPtr& mesh() const { return mesh_; }
  const SparseMat& mass() const { return mass_; }
  const SparseMat& stiffness() const { return stiffness_; }

  /// Componentwise solve M x = b for interleaved b. Relative residual of
  /// the factorization solve is checked against `tol` (default 1e-12).
  Eigen::VectorXd mass_solve(const Eigen::VectorXd& rhs,
                             double tol = 1e-12) const;

  /// Orthogonal L2 projection of a closed-form function onto the P1 space:
  /// solves M x = b with b_i = integral of f . phi_i (degree-9 rule in 1D,
  /// degree-6 in 2D).
  FeField l2_project(const VectorFn& f, double tol = 1e-12) const;

  /// Discrete Laplacian: w with <w, chi> = -<grad v, grad chi> for all chi,
  /// realized as the mass solve of -S v.
  FeField discrete_laplacian(const FeField& v, double tol = 1e-12) const;

  /// l2 and H1-seminorm via the assembled Gram matrices; l4 by
  /// degree-4-exact quadrature of |v|^4.
  Norms norms(const FeField& v) const;
  double l2_norm(const FeField& v) const;

  /// Dense matrix of the per-component discrete Laplacian -M^{-1} S.
  /// Built eagerly for interval meshes (where the implicit scheme needs its
  /// Jacobian); throws for 2D meshes.
  const Eigen::MatrixXd& dense_discrete_laplacian() const;

private:
  MeshPtr mesh_;
  SparseMat mass_;
  SparseMat stiffness_;
  Eigen::SimplicialLDLT<SparseMat> mass_ldlt_;
  Eigen::MatrixXd dense_laplacian_;  // 1D only
};

} // namespace sllb
