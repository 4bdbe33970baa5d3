// SPDX-License-Identifier: Apache-2.0
#include "sllb/observables.hpp"

#include <cmath>
#include <stdexcept>

namespace sllb {

double energy(const FeField& u, const SchemeParams& params,
              const FemOperators& ops) {
  const Norms n = ops.norms(u);
  return 0.5 * params.kappa1 * n.h1_semi * n.h1_semi +
         0.5 * params.kappa2 * n.l2 * n.l2 +
         0.25 * params.kappa2 * params.mu * n.l4 * n.l4 * n.l4 * n.l4;
}

double pathwise_error(const FeField& u_coarse, const FeField& u_ref, int s,
                      const FemOperators& ops_ref) {
  if (s != 0 && s != 1)
    throw std::invalid_argument("pathwise_error: s must be 0 or 1");
  if (!same_mesh(*u_ref.mesh(), *ops_ref.mesh()))
    throw std::invalid_argument("pathwise_error: reference mesh mismatch");
  const FeField on_ref = prolong(u_coarse, u_ref.mesh());
  const FeField diff(u_ref.mesh(), on_ref.values() - u_ref.values());
  const Norms n = ops_ref.norms(diff);
  if (s == 0) return n.l2;
  return std::sqrt(n.l2 * n.l2 + n.h1_semi * n.h1_semi);  // full H1 norm
}

double identity_residual(const FeField& u_prev, const FeField& u_next,
                         const FeField& g, double dW,
                         const SchemeParams& params, SchemeKind scheme,
                         const FemOperators& ops) {
  const SparseMat& mass = ops.mass();
  const SparseMat& stiff = ops.stiffness();
  const Eigen::VectorXd& up = u_prev.values();
  const Eigen::VectorXd& un = u_next.values();

  const double l2n_sq = dot_per_component(mass, un, un);
  const double l2p_sq = dot_per_component(mass, up, up);
  const Eigen::VectorXd d = un - up;
  const double incr_sq = dot_per_component(mass, d, d);

  const SparseMat cubic = assemble_cubic_weight(*ops.mesh(), u_prev);

  double r = 0.5 * (l2n_sq - l2p_sq) + 0.5 * incr_sq +
             params.k * params.kappa1 * dot_per_component(stiff, un, un) +
             params.k * params.kappa2 * l2n_sq +
             params.k * params.kappa2 * params.mu *
                 dot_per_component(cubic, un, un);

  const Eigen::VectorXd diffusion =
      assemble_diffusion_load(u_prev, g, params.kappa1, params.gamma);
  r -= dW * diffusion.dot(un);

  if (scheme == SchemeKind::semi_implicit) {
    const Eigen::VectorXd drift =
        assemble_drift_correction(u_prev, g, params.gamma);
    r -= params.k * drift.dot(un);
  } else {
    // The correction tested with u_next: -<(u x g) x g, u> = +|u x g|^2
    // pointwise, evaluated with the same quadrature as the load assembly.
    r += 0.5 * params.k * params.gamma * params.gamma *
         integrate_cross_sq(u_next, g);
  }
  return std::abs(r);
}

} // namespace sllb
