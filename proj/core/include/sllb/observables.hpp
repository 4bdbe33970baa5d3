// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "sllb/fem.hpp"
#include "sllb/params.hpp"

namespace sllb {

struct EnergySample {
  double t;
  double energy;
};

struct ErrorSample {
  int s;  // Sobolev index: 0 or 1
  double value;
  double h;
  double k;
};

/// Energy functional (kappa1/2)|grad u|^2 + (kappa2/2)|u|^2
/// + (kappa2 mu / 4)|u|_L4^4.
double energy(const FeField& u, const SchemeParams& params,
              const FemOperators& ops);

/// Pathwise discretization error: prolong u_coarse to the reference mesh and
/// take the L2 norm (s = 0) or the full H1 norm (s = 1) of the difference
/// there. ops_ref must be the operator cache of the reference mesh.
double pathwise_error(const FeField& u_coarse, const FeField& u_ref, int s,
                      const FemOperators& ops_ref);

/// Defect of the per-step energy identity obtained by testing the scheme
/// equation with the new iterate; the cross-convection (semi-implicit) or
/// u x discrete-Laplacian (implicit) contribution drops out exactly. All
/// inner products use the same assembly quadrature as the steppers, so the
/// value reflects only solver and fixed-point truncation error.
double identity_residual(const FeField& u_prev, const FeField& u_next,
                         const FeField& g, double dW,
                         const SchemeParams& params, SchemeKind scheme,
                         const FemOperators& ops);

} // namespace sllb
