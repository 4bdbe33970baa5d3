// SPDX-License-Identifier: Apache-2.0
#include "sllb/linsolve.hpp"

#include <string>

namespace sllb {

namespace {

double relative_residual(const SparseMat& A, const Eigen::VectorXd& x,
                         const Eigen::VectorXd& b, double bnorm) {
  return (A * x - b).norm() / bnorm;
}

} // namespace

std::pair<Eigen::VectorXd, SolveReport> solve(const SparseMat& A,
                                              const Eigen::VectorXd& b,
                                              double tol, bool symmetric_hint) {
  if (A.rows() != A.cols() || A.rows() != b.size())
    throw std::invalid_argument("solve: dimension mismatch");
  const double bnorm = b.norm();
  if (bnorm == 0.0)
    return {Eigen::VectorXd::Zero(b.size()), SolveReport{0.0, 0}};

  Eigen::VectorXd x;
  if (symmetric_hint) {
    Eigen::SimplicialLDLT<SparseMat> ldlt(A);
    if (ldlt.info() != Eigen::Success)
      throw SolveError("solve: LDLT factorization failed", -1.0);
    x = ldlt.solve(b);
  } else {
    Eigen::SparseLU<SparseMat> lu(A);
    if (lu.info() != Eigen::Success)
      throw SolveError("solve: LU factorization failed", -1.0);
    x = lu.solve(b);
  }
  const double rel = relative_residual(A, x, b, bnorm);
  if (rel > tol)
    throw SolveError("solve: residual " + std::to_string(rel) +
                         " exceeds tolerance " + std::to_string(tol),
                     rel);
  return {std::move(x), SolveReport{rel, 0}};
}

SpdFactor::SpdFactor(const SparseMat& A) : matrix_(&A) {
  ldlt_.compute(A);
  if (ldlt_.info() != Eigen::Success)
    throw SolveError("SpdFactor: factorization failed", -1.0);
}

std::pair<Eigen::VectorXd, SolveReport> SpdFactor::solve(
    const Eigen::VectorXd& b, double tol) const {
  const double bnorm = b.norm();
  if (bnorm == 0.0)
    return {Eigen::VectorXd::Zero(b.size()), SolveReport{0.0, 0}};
  Eigen::VectorXd x = ldlt_.solve(b);
  const double rel = relative_residual(*matrix_, x, b, bnorm);
  if (rel > tol)
    throw SolveError("SpdFactor: residual " + std::to_string(rel) +
                         " exceeds tolerance",
                     rel);
  return {std::move(x), SolveReport{rel, 0}};
}

std::pair<Eigen::VectorXd, SolveReport> SpdFactor::solve_per_component(
    const Eigen::VectorXd& b, double tol) const {
  const int n = static_cast<int>(b.size()) / 3;
  Eigen::VectorXd out(b.size());
  Eigen::VectorXd comp(n);
  double worst = 0.0;
  for (int d = 0; d < 3; ++d) {
    for (int i = 0; i < n; ++i) comp[i] = b[3 * i + d];
    auto [sol, report] = solve(comp, tol);
    worst = std::max(worst, report.relative_residual);
    for (int i = 0; i < n; ++i) out[3 * i + d] = sol[i];
  }
  return {std::move(out), SolveReport{worst, 0}};
}

std::pair<Eigen::VectorXd, SolveReport> BlockSystemSolver::solve(
    const SparseMat& spd_scalar_part, const SparseMat& coupling,
    const Eigen::VectorXd& b, double tol) {
  const SparseMat full = expand_blocks(spd_scalar_part) + coupling;
  const double bnorm = b.norm();
  if (bnorm == 0.0)
    return {Eigen::VectorXd::Zero(b.size()), SolveReport{0.0, 0}};

  if (!analyzed_ || pattern_rows_ != full.rows()) {
    lu_.analyzePattern(full);
    analyzed_ = true;
    pattern_rows_ = full.rows();
  }
  lu_.factorize(full);
  if (lu_.info() != Eigen::Success)
    throw SolveError("BlockSystemSolver: LU factorization failed", -1.0);
  Eigen::VectorXd x = lu_.solve(b);
  const double rel = relative_residual(full, x, b, bnorm);
  if (rel > tol)
    throw SolveError("BlockSystemSolver: residual " + std::to_string(rel) +
                         " exceeds tolerance " + std::to_string(tol),
                     rel);
  return {std::move(x), SolveReport{rel, 0}};
}

} // namespace sllb
