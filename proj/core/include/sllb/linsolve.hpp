// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>
#include <stdexcept>
#include <utility>

#include "sllb/fem.hpp"

namespace sllb {

struct SolveReport {
  double relative_residual = 0.0;
  int iterations = 0;  // 0 for direct factorizations
};

class SolveError : public std::runtime_error {
public:
  SolveError(const std::string& what, double achieved_residual)
      : std::runtime_error(what), achieved_residual(achieved_residual) {}
  double achieved_residual;
};

/// Solve A x = b with a sparse direct factorization (LDLT when
/// symmetric_hint, LU otherwise) and verify ||Ax-b||/||b|| <= tol.
/// b = 0 gives x = 0. Throws SolveError when the contract cannot be met.
std::pair<Eigen::VectorXd, SolveReport> solve(const SparseMat& A,
                                              const Eigen::VectorXd& b,
                                              double tol, bool symmetric_hint);

/// Cached LDLT factorization of an SPD matrix for repeated right-hand sides.
class SpdFactor {
public:
  explicit SpdFactor(const SparseMat& A);
  std::pair<Eigen::VectorXd, SolveReport> solve(const Eigen::VectorXd& b,
                                                double tol) const;
  /// Componentwise solve for interleaved 3-vector right-hand sides.
  std::pair<Eigen::VectorXd, SolveReport>
  solve_per_component(const Eigen::VectorXd& b, double tol) const;

private:
  const SparseMat* matrix_;
  Eigen::SimplicialLDLT<SparseMat> ldlt_;
};

/// Direct solver for the interleaved systems (P per component + K) x = b,
/// with P an n x n SPD part applied to each component and K a 3n x 3n
/// coupling on the same node stencil. The sparsity pattern is fixed by the
/// mesh, so the symbolic LU analysis is reused across repeated calls (one
/// numeric factorization per call).
class BlockSystemSolver {
public:
  BlockSystemSolver() = default;

  std::pair<Eigen::VectorXd, SolveReport> solve(const SparseMat& spd_scalar_part,
                                                const SparseMat& coupling,
                                                const Eigen::VectorXd& b,
                                                double tol);

private:
  Eigen::SparseLU<SparseMat> lu_;
  bool analyzed_ = false;
  Eigen::Index pattern_rows_ = -1;
};

} // namespace sllb
