// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "sllb/observables.hpp"
#include "sllb/schemes.hpp"
#include "sllb/simulations.hpp"
#include "support.hpp"

using namespace sllb;

TEST_SUITE("observables") {

TEST_CASE("energy values") {
  auto sim = simulation1();
  auto mesh = Mesh::interval(10);
  FemOperators ops(mesh);
  auto p = sim.make_params(0.01, 1.0, SchemeKind::semi_implicit);

  CHECK(energy(FeField(mesh), p, ops) == 0.0);

  FeField c(mesh);
  for (int i = 0; i < mesh->n_nodes(); ++i) c.set(i, {1.0, 0.0, 0.0});
  // (kappa2/2) * 1 + (kappa2 mu / 4) * 1 = 0.25 + 0.125
  CHECK(energy(c, p, ops) == doctest::Approx(0.375).epsilon(1e-14));
}

TEST_CASE("energy dominates its L2 part") {
  auto sim = simulation1();
  auto mesh = Mesh::interval(12);
  FemOperators ops(mesh);
  auto p = sim.make_params(0.01, 1.0, SchemeKind::semi_implicit);
  auto& gen = testsup::rng(101);
  for (int trial = 0; trial < 20; ++trial) {
    FeField v = testsup::random_field(mesh, gen);
    const double l2 = ops.l2_norm(v);
    CHECK(energy(v, p, ops) >= 0.5 * p.kappa2 * l2 * l2 - 1e-14);
  }
}

TEST_CASE("energy decays along a zero-noise trajectory") {
  auto sim = simulation1();
  auto mesh = Mesh::interval(16);
  FemOperators ops(mesh);
  FeField u0 = ops.l2_project(sim.initial_data);
  FeField g0(mesh);
  auto p = sim.make_params(0.01, 0.505, SchemeKind::semi_implicit);
  NoisePath path = generate_path(1, 0, 0.01, 50);
  double prev = energy(u0, p, ops);
  Observer check = [&](int, double, const FeField& u, const StepReport* r) {
    if (!r) return;
    const double now = energy(u, p, ops);
    CHECK(now <= prev);
    prev = now;
  };
  run_trajectory(u0, g0, path, 1, p, ops, {check});
}

TEST_CASE("pathwise error") {
  auto coarse = Mesh::interval(8);
  auto fine = Mesh::interval(32);
  FemOperators ops_fine(fine);
  auto& gen = testsup::rng(103);

  SUBCASE("prolonged field has zero distance to itself") {
    FeField u = testsup::random_field(coarse, gen);
    FeField ref = prolong(u, fine);
    CHECK(pathwise_error(u, ref, 0, ops_fine) <= 1e-15);
    CHECK(pathwise_error(u, ref, 1, ops_fine) <= 1e-13);
  }
  SUBCASE("norm axioms on the reference mesh") {
    FeField u = testsup::random_field(fine, gen);
    FeField v = testsup::random_field(fine, gen);
    FeField w = testsup::random_field(fine, gen);
    for (int s : {0, 1}) {
      const double uv = pathwise_error(u, v, s, ops_fine);
      const double vu = pathwise_error(v, u, s, ops_fine);
      CHECK(uv == doctest::Approx(vu).epsilon(1e-13));
      CHECK(pathwise_error(u, w, s, ops_fine) <=
            uv + pathwise_error(v, w, s, ops_fine) + 1e-13);
    }
  }
  SUBCASE("L2 error bounded by the H1 error") {
    for (int trial = 0; trial < 10; ++trial) {
      FeField u = testsup::random_field(coarse, gen);
      FeField ref = testsup::random_field(fine, gen);
      CHECK(pathwise_error(u, ref, 0, ops_fine) <=
            pathwise_error(u, ref, 1, ops_fine) * (1 + 1e-13));
    }
  }
  SUBCASE("non-nested pair rejected") {
    FeField u = testsup::random_field(Mesh::interval(12), gen);
    FeField ref = testsup::random_field(fine, gen);
    CHECK_THROWS_AS(pathwise_error(u, ref, 0, ops_fine),
                    std::invalid_argument);
    CHECK_THROWS_AS(pathwise_error(u, ref, 2, ops_fine),
                    std::invalid_argument);
  }
}

TEST_CASE("identity residual on a two-cell mesh against dense algebra") {
  // Hand-assembled matrices: M = h/6 tridiag(1,4,1) with halved ends,
  // S = (1/h) tridiag(-1,2,-1) with halved diagonal ends.
  auto mesh = Mesh::interval(2);
  FemOperators ops(mesh);
  const double h = 0.5;
  Eigen::Matrix3d M;
  M << 2, 1, 0, 1, 4, 1, 0, 1, 2;
  M *= h / 6.0;
  Eigen::Matrix3d S;
  S << 1, -1, 0, -1, 2, -1, 0, -1, 1;
  S /= h;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      CHECK(ops.mass().coeff(i, j) == doctest::Approx(M(i, j)).epsilon(1e-14));
      CHECK(ops.stiffness().coeff(i, j) ==
            doctest::Approx(S(i, j)).epsilon(1e-14));
    }

  auto sim = simulation1();
  auto p = sim.make_params(0.01, 1.0, SchemeKind::semi_implicit);
  auto& gen = testsup::rng(107);
  FeField u_prev = testsup::random_field(mesh, gen);
  FeField g = testsup::random_field(mesh, gen);
  auto [u_next, report] = semi_implicit_step(u_prev, g, 0.07, p, ops);

  // dense recomputation of every identity term
  auto dotM = [&](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    double acc = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int d = 0; d < 3; ++d) acc += M(i, j) * a[3 * i + d] * b[3 * j + d];
    return acc;
  };
  auto dotS = [&](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    double acc = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int d = 0; d < 3; ++d) acc += S(i, j) * a[3 * i + d] * b[3 * j + d];
    return acc;
  };
  const Eigen::VectorXd& un = u_next.values();
  const Eigen::VectorXd& up = u_prev.values();
  const Eigen::VectorXd diff = un - up;
  SparseMat cubic = assemble_cubic_weight(*mesh, u_prev);
  double dense = 0.5 * (dotM(un, un) - dotM(up, up)) + 0.5 * dotM(diff, diff) +
                 p.k * p.kappa1 * dotS(un, un) + p.k * p.kappa2 * dotM(un, un) +
                 p.k * p.kappa2 * p.mu * dot_per_component(cubic, un, un) -
                 p.k * assemble_drift_correction(u_prev, g, p.gamma).dot(un) -
                 0.07 * assemble_diffusion_load(u_prev, g, p.kappa1, p.gamma)
                            .dot(un);
  const double lib = identity_residual(u_prev, u_next, g, 0.07, p,
                                       SchemeKind::semi_implicit, ops);
  CHECK(lib == doctest::Approx(std::abs(dense)).epsilon(1e-10));
  CHECK(lib <= 1e-13);
}

TEST_CASE("identity residual detects an inexact solve") {
  // Emulates loosening the linear solver to ~1e-4: perturb the solution at
  // that magnitude and the diagnostic must light up by orders of magnitude.
  auto sim = simulation1();
  auto mesh = Mesh::interval(16);
  FemOperators ops(mesh);
  FeField u_prev = ops.l2_project(sim.initial_data);
  FeField g = ops.l2_project(sim.noise_coefficient);
  auto p = sim.make_params(0.01, 1.0, SchemeKind::semi_implicit);
  auto [u_next, report] = semi_implicit_step(u_prev, g, 0.05, p, ops);
  const double tight = identity_residual(u_prev, u_next, g, 0.05, p,
                                         SchemeKind::semi_implicit, ops);

  FeField dirty(mesh, u_next.values());
  auto& gen = testsup::rng(109);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int i = 0; i < dirty.values().size(); ++i)
    dirty.values()[i] += 1e-4 * dist(gen);
  const double loose = identity_residual(u_prev, dirty, g, 0.05, p,
                                         SchemeKind::semi_implicit, ops);
  CHECK(tight <= 1e-12);
  CHECK(loose > 100.0 * tight);
  CHECK(loose > 1e-7);
}

TEST_CASE("identity residual is invariant under a global rotation") {
  auto sim = simulation1();
  auto mesh = Mesh::interval(12);
  FemOperators ops(mesh);
  auto p = sim.make_params(0.01, 1.0, SchemeKind::semi_implicit);
  auto& gen = testsup::rng(113);
  FeField u_prev = testsup::random_field(mesh, gen);
  FeField g = testsup::random_field(mesh, gen);
  // a perturbed (non-solution) state makes the residual genuinely nonzero
  FeField u_next = testsup::random_field(mesh, gen);

  const Eigen::Matrix3d rot =
      Eigen::AngleAxisd(0.83, Eigen::Vector3d(1.0, 2.0, -0.5).normalized())
          .toRotationMatrix();
  auto rotate = [&](const FeField& f) {
    FeField out(mesh);
    for (int i = 0; i < mesh->n_nodes(); ++i) out.set(i, rot * f.at(i));
    return out;
  };

  for (SchemeKind kind : {SchemeKind::semi_implicit, SchemeKind::implicit}) {
    const double plain = identity_residual(u_prev, u_next, g, 0.04, p, kind, ops);
    const double rotated = identity_residual(rotate(u_prev), rotate(u_next),
                                             rotate(g), 0.04, p, kind, ops);
    CHECK(plain > 1e-6);  // non-degenerate test
    CHECK(rotated == doctest::Approx(plain).epsilon(1e-10));
  }
}

} // TEST_SUITE
