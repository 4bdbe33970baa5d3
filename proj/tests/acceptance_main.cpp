// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: runs the project's verification criteria end to end and
// prints one PASS/FAIL line per criterion. Without arguments all criteria
// run; --criterion N runs a single one. Exit status is the number of
// failures.

#include <cmath>
#include <cstdio>
#include <cstring>
#include <random>
#include <string>
#include <vector>

#include "sllb/experiments.hpp"
#include "sllb/observables.hpp"
#include "sllb/parallel.hpp"

using namespace sllb;

namespace {

struct Criterion {
  int id;
  std::string label;
  bool passed;
  std::string detail;
};

std::string fmt(const char* pattern, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), pattern, args...);
  return std::string(buf);
}

// ---------------------------------------------------------------------------
// 1 & 2: per-step identity residuals on 10 common paths
// ---------------------------------------------------------------------------
Criterion identity_criterion(int id, SchemeKind kind, double bound) {
  auto sim = simulation1();
  auto mesh = Mesh::interval(32);
  FemOperators ops(mesh);
  const FeField u0 = ops.l2_project(sim.initial_data);
  const FeField g = ops.l2_project(sim.noise_coefficient);
  const double k = 1.0 / 100;
  const int n_steps = 20;  // T = 0.2
  auto params = sim.make_params(k, (n_steps + 0.5) * k, kind);

  double worst = 0.0;
  int worst_picard = 0;
  for (int p = 0; p < 10; ++p) {
    const NoisePath path = generate_path(2400 + p, p, k, n_steps);
    Observer check = [&](int, double, const FeField& u, const StepReport* r) {
      if (!r) return;
      const double l2 = ops.l2_norm(u);
      worst = std::max(worst,
                       r->energy_identity_residual / (1.0 + l2 * l2));
      worst_picard = std::max(worst_picard, r->picard_iterations);
    };
    run_trajectory(u0, g, path, 1, params, ops, {check});
  }
  bool ok = worst <= bound;
  std::string detail = fmt("max normalized residual %.3e (bound %.0e)", worst,
                           bound);
  if (kind == SchemeKind::implicit) {
    ok = ok && worst_picard <= 30;
    detail += fmt(", max nonlinear iterations %d (bound 30)", worst_picard);
  }
  const char* name = kind == SchemeKind::semi_implicit
                         ? "semi-implicit per-step energy identity"
                         : "implicit per-step energy identity";
  return {id, name, ok, detail};
}

// ---------------------------------------------------------------------------
// 3: zero-noise constant-field oracle
// ---------------------------------------------------------------------------
Criterion constant_oracle_criterion() {
  auto sim = simulation1();
  auto mesh = Mesh::interval(16);
  FemOperators ops(mesh);
  const Eigen::Vector3d c0(0.3, -0.2, 0.5);
  FeField start(mesh);
  for (int i = 0; i < mesh->n_nodes(); ++i) start.set(i, c0);
  const FeField g0(mesh);

  double worst = 0.0;
  for (SchemeKind kind : {SchemeKind::semi_implicit, SchemeKind::implicit}) {
    auto params = sim.make_params(1.0 / 100, 100.5 / 100, kind);
    FeField u = start;
    Eigen::Vector3d c = c0;
    for (int n = 0; n < 100; ++n) {
      auto [next, report] =
          kind == SchemeKind::semi_implicit
              ? semi_implicit_step(u, g0, 0.3, params, ops)
              : implicit_step(u, g0, 0.3, params, ops);
      u = next;
      c /= 1.0 + params.k * params.kappa2 * (1.0 + params.mu * c.squaredNorm());
    }
    for (int i = 0; i < mesh->n_nodes(); ++i)
      worst = std::max(worst, (u.at(i) - c).lpNorm<Eigen::Infinity>());
  }
  return {3, "zero-noise constant-field oracle",
          worst <= 1e-12,
          fmt("max deviation from the scalar recursion %.3e (bound 1e-12)",
              worst)};
}

// ---------------------------------------------------------------------------
// 4-6: convergence studies
// ---------------------------------------------------------------------------
Criterion spatial_sim1_criterion() {
  ConvergenceConfig c;
  c.sim = simulation1();
  c.scheme = SchemeKind::implicit;
  c.axis = Axis::spatial;
  c.levels = {4, 8, 16, 32};
  c.reference_level = 64;
  c.fixed_inverse = 400;
  c.T = 0.2;
  c.paths = 50;
  c.seed = 20260801;
  const ConvergenceTable t = convergence_study(c);

  const double published[] = {0.96, 0.24, 0.059, 0.013};
  bool values_ok = true;
  for (size_t i = 0; i < t.levels.size(); ++i) {
    const double ratio = t.levels[i].e0 / published[i];
    values_ok = values_ok && ratio > 1.0 / 3.0 && ratio < 3.0;
  }
  const bool order0_ok = t.fitted_slope_0 >= 1.7 && t.fitted_slope_0 <= 2.3;
  const bool order1_ok = t.fitted_slope_1 >= 0.8 && t.fitted_slope_1 <= 1.3;
  return {4, "spatial convergence, simulation 1 (implicit)",
          order0_ok && order1_ok && values_ok,
          fmt("E_0 order %.3f (window [1.7,2.3]), E_1 order %.3f (window "
              "[0.8,1.3]), E_0 = {%.3g, %.3g, %.3g, %.3g} vs published "
              "{0.96, 0.24, 0.059, 0.013} within factor 3: %s, E_1 = "
              "{%.3g, %.3g, %.3g, %.3g}",
              t.fitted_slope_0, t.fitted_slope_1, t.levels[0].e0,
              t.levels[1].e0, t.levels[2].e0, t.levels[3].e0,
              values_ok ? "yes" : "no", t.levels[0].e1, t.levels[1].e1,
              t.levels[2].e1, t.levels[3].e1)};
}

Criterion temporal_sim1_criterion() {
  ConvergenceConfig c;
  c.sim = simulation1();
  c.scheme = SchemeKind::implicit;
  c.axis = Axis::temporal;
  c.levels = {25, 50, 100, 200};
  c.reference_level = 400;
  c.fixed_inverse = 64;
  c.T = 0.2;
  c.paths = 50;
  c.seed = 20260802;
  const ConvergenceTable t = convergence_study(c);
  const bool ok = t.fitted_slope_1 >= 0.3 && t.fitted_slope_1 <= 0.7;
  return {5, "temporal convergence, simulation 1 (implicit)", ok,
          fmt("E_1 order %.3f (window [0.3,0.7]), E_0 order %.3f",
              t.fitted_slope_1, t.fitted_slope_0)};
}

Criterion spatial_sim2_criterion() {
  ConvergenceConfig c;
  c.sim = simulation2();
  c.scheme = SchemeKind::semi_implicit;
  c.axis = Axis::spatial;
  c.levels = {4, 8, 16, 32};
  c.reference_level = 64;
  c.fixed_inverse = 400;
  c.T = 0.2;
  c.paths = 50;
  c.seed = 20260803;
  const ConvergenceTable t = convergence_study(c);
  const double ratio = t.levels[3].e0 / 0.00018;
  const bool value_ok = ratio > 1.0 / 3.0 && ratio < 3.0;
  const bool order0_ok = t.fitted_slope_0 >= 1.7 && t.fitted_slope_0 <= 2.3;
  const bool order1_ok = t.fitted_slope_1 >= 0.8 && t.fitted_slope_1 <= 1.3;
  return {6, "spatial convergence, simulation 2 (2D semi-implicit)",
          order0_ok && order1_ok && value_ok,
          fmt("E_0 order %.3f (window [1.7,2.3]), E_1 order %.3f (window "
              "[0.8,1.3]), E_0(1/h=32) = %.3g vs published 0.00018 within "
              "factor 3: %s",
              t.fitted_slope_0, t.fitted_slope_1, t.levels[3].e0,
              value_ok ? "yes" : "no")};
}

// ---------------------------------------------------------------------------
// 7: stability decay
// ---------------------------------------------------------------------------
Criterion stability_criterion() {
  StabilityConfig c;
  c.noise = NoiseLevel::small;
  c.epsilons = {1e-1, 1e-2, 1e-3};
  c.mesh_n = 32;
  c.k_inverse = 100;
  c.T = 2.0;
  c.paths = 30;
  c.fit_window_lo = 0.5;
  c.fit_window_hi = 2.0;
  c.seed = 20260804;
  const StabilityResult r = stability_study(c);

  bool lambdas_ok = true;
  double lmin = 1e300, lmax = -1e300;
  bool init_ok = true;
  std::string lambdas;
  for (const auto& curve : r.curves) {
    lambdas_ok = lambdas_ok && curve.decay_fit.has_value() && curve.lambda > 0;
    if (curve.decay_fit) {
      lmin = std::min(lmin, curve.lambda);
      lmax = std::max(lmax, curve.lambda);
      lambdas += fmt(" %.4f", curve.lambda);
    }
    const double eps_sq = curve.epsilon * curve.epsilon;
    init_ok = init_ok &&
              std::abs(curve.mean_sq_diff.front() / eps_sq - 1.0) <= 0.10;
  }
  const double spread = 2.0 * (lmax - lmin) / (lmax + lmin);
  const bool agree_ok = spread <= 0.20;
  return {7, "mean-square exponential stability, small noise",
          lambdas_ok && agree_ok && init_ok,
          fmt("lambda per epsilon:%s, pairwise spread %.1f%% (bound 20%%), "
              "initial means scale as eps^2 within 10%%: %s",
              lambdas.c_str(), 100.0 * spread, init_ok ? "yes" : "no")};
}

// ---------------------------------------------------------------------------
// 8: property pack without published numbers
// ---------------------------------------------------------------------------
Criterion property_criterion() {
  std::vector<std::string> failures;

  {  // cross-operator skew symmetry
    auto mesh = Mesh::unit_square(4);
    std::mt19937_64 gen(12345);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    FeField w(mesh), v(mesh);
    for (int i = 0; i < w.values().size(); ++i) {
      w.values()[i] = dist(gen);
      v.values()[i] = dist(gen);
    }
    SparseMat cc = assemble_cross_convection(*mesh, w);
    SparseMat sum = SparseMat(cc.transpose()) + cc;
    double worst = 0.0;
    for (int col = 0; col < sum.outerSize(); ++col)
      for (SparseMat::InnerIterator it(sum, col); it; ++it)
        worst = std::max(worst, std::abs(it.value()));
    if (worst > 1e-13) failures.push_back(fmt("skew symmetry %.1e", worst));
    if (std::abs(v.values().dot(cc * v.values())) > 1e-13)
      failures.push_back("quadratic form of the cross operator");
  }
  {  // mass SPD
    auto mesh = Mesh::interval(16);
    SparseMat m = assemble_mass(*mesh);
    std::mt19937_64 gen(777);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
      Eigen::VectorXd x(mesh->n_nodes());
      for (int i = 0; i < x.size(); ++i) x[i] = dist(gen);
      if (x.dot(m * x) <= 0.0) {
        failures.push_back("mass positive definiteness");
        break;
      }
    }
  }
  {  // stiffness kernel
    for (MeshPtr mesh : {Mesh::interval(12), Mesh::unit_square(4)}) {
      SparseMat s = assemble_stiffness(*mesh);
      const Eigen::VectorXd ones = Eigen::VectorXd::Ones(mesh->n_nodes());
      if ((s * ones).lpNorm<Eigen::Infinity>() > 1e-13)
        failures.push_back("stiffness kernel");
    }
  }
  {  // nested prolongation exactness
    auto coarse = Mesh::interval(8);
    auto fine = Mesh::interval(32);
    std::mt19937_64 gen(31415);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    FeField u(coarse);
    for (int i = 0; i < u.values().size(); ++i) u.values()[i] = dist(gen);
    const FeField up = prolong(u, fine);
    const FeField up2 = prolong(prolong(u, Mesh::interval(16)), fine);
    if ((up.values() - up2.values()).lpNorm<Eigen::Infinity>() > 1e-13)
      failures.push_back("prolongation exactness");
  }
  {  // Brownian coarsening consistency
    const NoisePath path = generate_path(99, 0, 1.0 / 400, 80);
    double fine_total = 0.0;
    for (double d : path.increments) fine_total += d;
    for (int factor : {2, 4, 5, 8, 10, 16, 20, 40, 80}) {
      double total = 0.0;
      for (double d : coarsen(path, factor)) total += d;
      if (total != fine_total) {
        failures.push_back("coarsening displacement");
        break;
      }
    }
  }
  {  // projection orthogonality via the mass matrix
    auto mesh = Mesh::interval(8);
    FemOperators ops(mesh);
    const auto f = [](const Eigen::Vector2d& p) {
      const double a = 2 * 3.14159265358979323846 * p.x();
      return Eigen::Vector3d(0.2, std::cos(a), std::sin(a));
    };
    const FeField proj = ops.l2_project(f);
    // <proj - f, phi_i> = (M proj - b)_i with b from a finer rule: recompute
    // the load on a nested refinement and restrict.
    auto fine = Mesh::interval(64);
    FemOperators fine_ops(fine);
    const FeField pf = prolong(proj, fine);
    const FeField f_fine = fine_ops.l2_project(f);
    const Eigen::VectorXd defect = apply_per_component(
        fine_ops.mass(), pf.values() - f_fine.values());
    // restrict to the coarse hats: sum fine-node contributions with hat
    // weights (the fine projection reproduces the L2 pairing to 1e-12)
    double worst = 0.0;
    const int factor = 8;
    for (int i = 0; i < mesh->n_nodes(); ++i) {
      Eigen::Vector3d acc = Eigen::Vector3d::Zero();
      for (int j = 0; j < fine->n_nodes(); ++j) {
        const double w =
            std::max(0.0, 1.0 - std::abs(j - i * factor) / double(factor));
        acc += w * defect.segment<3>(3 * j);
      }
      worst = std::max(worst, acc.lpNorm<Eigen::Infinity>());
    }
    if (worst > 1e-10)
      failures.push_back(fmt("projection orthogonality %.1e", worst));
  }
  {  // fit_slope exactness
    std::vector<std::pair<double, double>> pow_pts, exp_pts;
    for (double x : {0.25, 0.5, 1.0, 2.0}) pow_pts.emplace_back(x, 2.0 * x * x);
    for (double t : {0.0, 1.0, 2.0}) exp_pts.emplace_back(t, std::exp(-3.0 * t));
    if (std::abs(fit_slope(pow_pts, FitModel::log_log).slope - 2.0) > 1e-12)
      failures.push_back("power-law fit");
    if (std::abs(fit_slope(exp_pts, FitModel::semi_log).slope + 3.0) > 1e-12)
      failures.push_back("exponential fit");
  }

  std::string detail = "skew/SPD/kernel/prolongation/coarsening/"
                       "orthogonality/fit checks";
  if (!failures.empty()) {
    detail = "failed:";
    for (const auto& f : failures) detail += " " + f + ";";
  }
  return {8, "property suites", failures.empty(), detail};
}

} // namespace

int main(int argc, char** argv) {
  std::vector<int> wanted;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc)
      wanted.push_back(std::atoi(argv[++i]));

  auto selected = [&](int id) {
    if (wanted.empty()) return true;
    for (int w : wanted)
      if (w == id) return true;
    return false;
  };

  std::vector<Criterion> results;
  if (selected(1))
    results.push_back(identity_criterion(1, SchemeKind::semi_implicit, 1e-10));
  if (selected(2))
    results.push_back(identity_criterion(2, SchemeKind::implicit, 1e-9));
  if (selected(3)) results.push_back(constant_oracle_criterion());
  if (selected(4)) results.push_back(spatial_sim1_criterion());
  if (selected(5)) results.push_back(temporal_sim1_criterion());
  if (selected(6)) results.push_back(spatial_sim2_criterion());
  if (selected(7)) results.push_back(stability_criterion());
  if (selected(8)) results.push_back(property_criterion());

  int failures = 0;
  for (const auto& r : results) {
    std::printf("%s criterion %d: %s — %s\n", r.passed ? "PASS" : "FAIL", r.id,
                r.label.c_str(), r.detail.c_str());
    if (!r.passed) ++failures;
  }
  return failures;
}
