// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "sllb/fem.hpp"
#include "sllb/noise.hpp"
#include "sllb/params.hpp"

namespace sllb {

struct StepReport {
  double linear_solve_residual = 0.0;
  int picard_iterations = 0;  // 0 for the semi-implicit scheme
  double energy_identity_residual = 0.0;
};

class StepFailure : public std::runtime_error {
public:
  StepFailure(const std::string& what, int step_index = -1)
      : std::runtime_error(what), step_index(step_index) {}
  int step_index;
};

class BlockSystemSolver;

/// One step of the semi-implicit scheme (1D and 2D): diffusion, local terms
/// and the tested leg of the cross term at the new time level, the cross
/// coefficient, cubic weight and noise coefficients lagged. Solves one
/// nonsymmetric but coercive linear system; a caller-held solver reuses the
/// symbolic factorization across the steps of a trajectory.
std::pair<FeField, StepReport> semi_implicit_step(const FeField& u_prev,
                                                  const FeField& g, double dW,
                                                  const SchemeParams& params,
                                                  const FemOperators& ops,
                                                  BlockSystemSolver* solver = nullptr);

/// One step of the implicit scheme (1D): the u x discrete-Laplacian cross
/// term and the noise correction are taken at the new time level. The
/// nonlinear system is solved by damped Newton from u_prev with the exact
/// Jacobian (dense at the scheme's 1D sizes); picard_tol/picard_max control
/// the update tolerance and the iteration cap, and the iteration count is
/// reported in StepReport::picard_iterations.
std::pair<FeField, StepReport> implicit_step(const FeField& u_prev,
                                             const FeField& g, double dW,
                                             const SchemeParams& params,
                                             const FemOperators& ops);

/// Called after the initial state (step 0, report nullptr) and after every
/// completed step.
using Observer =
    std::function<void(int step, double t, const FeField& u, const StepReport* report)>;

struct TrajectorySummary {
  FeField final_state;
  std::vector<StepReport> reports;
};

/// Run floor(T/k) steps of the configured scheme from u0, consuming the
/// path's increments coarsened by the given factor. Throws StepFailure with
/// the failing step index attached.
TrajectorySummary run_trajectory(const FeField& u0, const FeField& g,
                                 const NoisePath& path, int coarsen_factor,
                                 const SchemeParams& params,
                                 const FemOperators& ops,
                                 const std::vector<Observer>& observers = {});

} // namespace sllb
