// SPDX-License-Identifier: Apache-2.0
#include "sllb/schemes.hpp"

#include <cmath>
#include <stdexcept>

#include "sllb/linsolve.hpp"
#include "sllb/observables.hpp"

namespace sllb {

std::string to_string(SchemeKind k) {
  return k == SchemeKind::semi_implicit ? "semi" : "implicit";
}

SchemeKind scheme_from_string(const std::string& s) {
  if (s == "semi" || s == "semi_implicit") return SchemeKind::semi_implicit;
  if (s == "implicit") return SchemeKind::implicit;
  throw std::invalid_argument("unknown scheme '" + s + "'");
}

void SchemeParams::validate() const {
  if (!(k > 0.0)) throw std::invalid_argument("SchemeParams: k must be > 0");
  if (!(T >= k)) throw std::invalid_argument("SchemeParams: T must be >= k");
  if (!(kappa1 > 0.0 && gamma > 0.0 && kappa2 > 0.0 && mu > 0.0))
    throw std::invalid_argument("SchemeParams: coefficients must be positive");
}

namespace {

void check_step_inputs(const FeField& u_prev, const FeField& g,
                       const FemOperators& ops) {
  if (!same_mesh(*u_prev.mesh(), *g.mesh()) ||
      !same_mesh(*u_prev.mesh(), *ops.mesh()))
    throw std::invalid_argument("scheme step: field mesh mismatch");
}

// (1 + k kappa2) M + k kappa1 S + k kappa2 mu A(u_prev); SPD part shared by
// both schemes.
SparseMat spd_system_part(const FeField& u_prev, const SchemeParams& p,
                          const FemOperators& ops) {
  SparseMat out = (1.0 + p.k * p.kappa2) * ops.mass();
  out += (p.k * p.kappa1) * ops.stiffness();
  out += (p.k * p.kappa2 * p.mu) * assemble_cubic_weight(*ops.mesh(), u_prev);
  return out;
}

} // namespace

std::pair<FeField, StepReport> semi_implicit_step(const FeField& u_prev,
                                                  const FeField& g, double dW,
                                                  const SchemeParams& params,
                                                  const FemOperators& ops,
                                                  BlockSystemSolver* solver) {
  check_step_inputs(u_prev, g, ops);
  const Mesh& mesh = *ops.mesh();

  const SparseMat spd = spd_system_part(u_prev, params, ops);
  const SparseMat coupling =
      (params.k * params.gamma) * assemble_cross_convection(mesh, u_prev);

  Eigen::VectorXd rhs = apply_per_component(ops.mass(), u_prev.values());
  rhs += params.k * assemble_drift_correction(u_prev, g, params.gamma);
  rhs += dW * assemble_diffusion_load(u_prev, g, params.kappa1, params.gamma);

  BlockSystemSolver local;
  BlockSystemSolver& sys = solver ? *solver : local;
  auto [x, solve_report] = sys.solve(spd, coupling, rhs, params.linsolve_tol);

  FeField u_next(u_prev.mesh(), std::move(x));
  StepReport report;
  report.linear_solve_residual = solve_report.relative_residual;
  report.picard_iterations = 0;
  report.energy_identity_residual = identity_residual(
      u_prev, u_next, g, dW, params, SchemeKind::semi_implicit, ops);
  return {std::move(u_next), report};
}

namespace {

// Workspace of the implicit solve; theta in (0, 1] scales the time step and
// the increment jointly, giving the homotopy family used when the direct
// solve stalls. theta = 1 is the scheme's equation.
struct ImplicitSystem {
  const FemOperators& ops;
  const FeField& u_prev;
  const FeField& g;
  const SchemeParams& params;
  double dW;
  Eigen::MatrixXd lap3;  // interleaved dense discrete Laplacian

  ImplicitSystem(const FemOperators& ops, const FeField& u_prev,
                 const FeField& g, const SchemeParams& params, double dW)
      : ops(ops), u_prev(u_prev), g(g), params(params), dW(dW) {
    const Eigen::MatrixXd& lap_scalar = ops.dense_discrete_laplacian();
    const int n = static_cast<int>(lap_scalar.rows());
    lap3 = Eigen::MatrixXd::Zero(3 * n, 3 * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int d = 0; d < 3; ++d) lap3(3 * i + d, 3 * j + d) = lap_scalar(i, j);
  }

  // Damped Newton on the theta-scaled residual
  //   F(v) = (M + tk kappa2 M + tk kappa1 S + tk kappa2 mu A(u_prev)) v
  //          - (tk/2) gamma^2 D(g) v - tk gamma <v x Lap_h v, phi>
  //          - M u_prev - theta dW <kappa1 g + gamma u_prev x g, phi>.
  // Returns iterations used (positive) or the negative count when the line
  // search stalls; v holds the last iterate either way.
  int newton(double theta, int max_iterations, FeField& v,
             double* worst_lin_residual) const {
    const Mesh& mesh = *ops.mesh();
    const double tk = theta * params.k;
    const double kgamma = tk * params.gamma;

    SchemeParams scaled = params;
    scaled.k = tk;
    const SparseMat spd = spd_system_part(u_prev, scaled, ops);
    const SparseMat double_cross =
        (0.5 * tk * params.gamma * params.gamma) *
        assemble_double_cross(mesh, g);
    Eigen::VectorXd rhs = apply_per_component(ops.mass(), u_prev.values());
    rhs += (theta * dW) *
           assemble_diffusion_load(u_prev, g, params.kappa1, params.gamma);
    const Eigen::MatrixXd jac_fixed =
        Eigen::MatrixXd(expand_blocks(spd)) - Eigen::MatrixXd(double_cross);

    auto residual = [&](const FeField& w, const FeField& lap_w) {
      Eigen::VectorXd f = apply_per_component(spd, w.values());
      f -= double_cross * w.values();
      f -= kgamma * assemble_cross_load(w, lap_w);
      f -= rhs;
      return f;
    };

    for (int m = 1; m <= max_iterations; ++m) {
      const FeField lap_v(u_prev.mesh(), lap3 * v.values());
      const Eigen::VectorXd f = residual(v, lap_v);
      const double fnorm = f.norm();
      if (fnorm == 0.0) return m;

      // d/dv of <v x Lap v, phi>: <dv x Lap v, phi> + <v x Lap dv, phi>
      Eigen::MatrixXd jac = jac_fixed;
      jac += kgamma * Eigen::MatrixXd(assemble_cross_mass(mesh, lap_v));
      jac -= kgamma * (Eigen::MatrixXd(assemble_cross_mass(mesh, v)) * lap3);

      Eigen::PartialPivLU<Eigen::MatrixXd> lu(jac);
      const Eigen::VectorXd delta = lu.solve(-f);
      *worst_lin_residual =
          std::max(*worst_lin_residual, (jac * delta + f).norm() / fnorm);

      // Converged when the undamped update is below tolerance; the residual
      // is then at the level ||J|| * tol.
      if (ops.l2_norm(FeField(u_prev.mesh(), delta)) <= params.picard_tol) {
        v = FeField(u_prev.mesh(), v.values() + delta);
        return m;
      }

      // Backtracking on the residual norm: at strong coupling the full
      // step can overshoot.
      double t = 1.0;
      bool accepted = false;
      Eigen::VectorXd v_next;
      for (int cut = 0; cut < 40; ++cut) {
        v_next = v.values() + t * delta;
        const FeField cand(u_prev.mesh(), v_next);
        const FeField lap_cand(u_prev.mesh(), lap3 * v_next);
        if (residual(cand, lap_cand).norm() <= (1.0 - 1e-4 * t) * fnorm) {
          accepted = true;
          break;
        }
        t *= 0.5;
      }
      if (!accepted) return -m;
      v = FeField(u_prev.mesh(), std::move(v_next));
    }
    return -max_iterations;
  }
};

} // namespace

std::pair<FeField, StepReport> implicit_step(const FeField& u_prev,
                                             const FeField& g, double dW,
                                             const SchemeParams& params,
                                             const FemOperators& ops) {
  check_step_inputs(u_prev, g, ops);
  if (ops.mesh()->dim() != 1)
    throw std::invalid_argument("implicit_step: scheme is defined for 1D meshes");

  // The nonlinear system is solved by damped Newton with the exact Jacobian
  // (dense at the scheme's 1D sizes). Fixed-point iterations with the cross
  // term frozen are not contractive here: the u x Laplacian coupling
  // amplifies high frequencies by about gamma |u| / kappa1 per pass.
  const ImplicitSystem system(ops, u_prev, g, params, dW);

  StepReport report;
  double worst_residual = 0.0;

  // Semi-implicit predictor: one linear solve that lands within O(k) of the
  // implicit solution and roughly halves the Newton iteration count.
  FeField v = u_prev;
  {
    const Mesh& mesh = *ops.mesh();
    const SparseMat spd = spd_system_part(u_prev, params, ops);
    const SparseMat coupling =
        (params.k * params.gamma) * assemble_cross_convection(mesh, u_prev);
    Eigen::VectorXd rhs = apply_per_component(ops.mass(), u_prev.values());
    rhs += params.k * assemble_drift_correction(u_prev, g, params.gamma);
    rhs += dW * assemble_diffusion_load(u_prev, g, params.kappa1, params.gamma);
    BlockSystemSolver predictor;
    v = FeField(u_prev.mesh(),
                predictor.solve(spd, coupling, rhs, params.linsolve_tol).first);
  }

  int iterations =
      system.newton(1.0, params.picard_max, v, &worst_residual);

  if (iterations < 0) {
    // Near fold points of the strongly coupled equation the Newton path can
    // stall; continue from the trivial theta = 0 solution instead,
    // advancing theta adaptively up to the scheme's equation.
    int total = -iterations;
    const int budget = 10 * params.picard_max;
    v = u_prev;
    double theta = 0.0, step = 0.25;
    while (theta < 1.0 && total < budget) {
      const double target = std::min(1.0, theta + step);
      FeField trial = v;
      const int used = system.newton(target, 30, trial, &worst_residual);
      total += std::abs(used);
      if (used > 0) {
        v = std::move(trial);
        theta = target;
        step = std::min(2.0 * step, 1.0 - theta + 1e-9);
      } else {
        step *= 0.5;
        if (step < 1.0 / 1024)
          throw StepFailure(
              "implicit_step: continuation stalled at theta = " +
              std::to_string(theta));
      }
    }
    if (theta < 1.0)
      throw StepFailure(
          "implicit_step: nonlinear solve exceeded the iteration budget");
    iterations = total;
  }

  report.picard_iterations = iterations;
  report.linear_solve_residual = worst_residual;
  report.energy_identity_residual = identity_residual(
      u_prev, v, g, dW, params, SchemeKind::implicit, ops);
  return {std::move(v), report};
}

TrajectorySummary run_trajectory(const FeField& u0, const FeField& g,
                                 const NoisePath& path, int coarsen_factor,
                                 const SchemeParams& params,
                                 const FemOperators& ops,
                                 const std::vector<Observer>& observers) {
  params.validate();
  const int n_steps = params.n_steps();
  const std::vector<double> increments = coarsen(path, coarsen_factor);
  if (static_cast<int>(increments.size()) < n_steps)
    throw std::invalid_argument(
        "run_trajectory: coarsened path shorter than the step count");
  if (std::abs(coarsen_factor * path.k_fine - params.k) >
      1e-12 * std::abs(params.k))
    throw std::invalid_argument(
        "run_trajectory: coarsened step differs from params.k");

  TrajectorySummary summary;
  summary.reports.reserve(n_steps);
  for (const auto& obs : observers) obs(0, 0.0, u0, nullptr);

  BlockSystemSolver solver;
  FeField u = u0;
  for (int n = 1; n <= n_steps; ++n) {
    try {
      auto [u_next, report] =
          params.scheme == SchemeKind::semi_implicit
              ? semi_implicit_step(u, g, increments[n - 1], params, ops, &solver)
              : implicit_step(u, g, increments[n - 1], params, ops);
      u = std::move(u_next);
      summary.reports.push_back(report);
      for (const auto& obs : observers) obs(n, n * params.k, u, &report);
    } catch (const SolveError& err) {
      throw StepFailure("step " + std::to_string(n) + ": " + err.what(), n);
    } catch (const StepFailure& err) {
      throw StepFailure("step " + std::to_string(n) + ": " + err.what(), n);
    }
  }
  summary.final_state = std::move(u);
  return summary;
}

} // namespace sllb
