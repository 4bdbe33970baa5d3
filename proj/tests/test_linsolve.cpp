// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "sllb/linsolve.hpp"
#include "support.hpp"

using namespace sllb;

TEST_SUITE("linsolve") {

TEST_CASE("direct solve meets the residual contract") {
  auto mesh = Mesh::interval(20);
  SparseMat m = assemble_mass(*mesh);
  auto& gen = testsup::rng(71);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::VectorXd b(mesh->n_nodes());
  for (int i = 0; i < b.size(); ++i) b[i] = dist(gen);

  auto [x, report] = solve(m, b, 1e-12, true);
  CHECK(report.relative_residual <= 1e-12);
  CHECK((m * x - b).norm() / b.norm() <= 1e-12);
  CHECK(report.iterations == 0);
}

TEST_CASE("zero right-hand side returns zero") {
  auto mesh = Mesh::interval(8);
  SparseMat m = assemble_mass(*mesh);
  auto [x, report] = solve(m, Eigen::VectorXd::Zero(m.rows()), 1e-12, true);
  CHECK(x.norm() == 0.0);
  CHECK(report.relative_residual == 0.0);
}

TEST_CASE("manufactured solution recovered") {
  auto mesh = Mesh::interval(32);
  const double k = 0.01, kappa1 = 0.2;
  SparseMat a = assemble_mass(*mesh);
  a += SparseMat((k * kappa1) * assemble_stiffness(*mesh));
  auto& gen = testsup::rng(73);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::VectorXd x_star(mesh->n_nodes());
  for (int i = 0; i < x_star.size(); ++i) x_star[i] = dist(gen);
  const Eigen::VectorXd b = a * x_star;
  auto [x, report] = solve(a, b, 1e-12, false);
  CHECK((x - x_star).norm() / x_star.norm() <= 1e-12);
}

TEST_CASE("dimension mismatch rejected") {
  auto mesh = Mesh::interval(4);
  SparseMat m = assemble_mass(*mesh);
  CHECK_THROWS_AS(solve(m, Eigen::VectorXd::Zero(3), 1e-12, true),
                  std::invalid_argument);
}

TEST_CASE("residual contract on scheme-assembled systems") {
  // 100 systems drawn from actual step assemblies with random states.
  auto& gen = testsup::rng(79);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    auto mesh = Mesh::interval(8 + (trial % 5) * 4);
    FeField w = testsup::random_field(mesh, gen);
    const double k = 0.01;
    SparseMat spd = 1.005 * assemble_mass(*mesh);
    spd += SparseMat((k * 0.2) * assemble_stiffness(*mesh));
    spd += SparseMat((k * 0.5) * assemble_cubic_weight(*mesh, w));
    Eigen::VectorXd b(spd.rows());
    for (int i = 0; i < b.size(); ++i) b[i] = dist(gen);
    auto [x, report] = solve(spd, b, 1e-12, true);
    CHECK(report.relative_residual <= 1e-12);
  }
  for (int trial = 0; trial < 50; ++trial) {
    auto mesh = Mesh::unit_square(3 + (trial % 4));
    FeField w = testsup::random_field(mesh, gen);
    const double k = 0.01;
    SparseMat spd = 1.005 * assemble_mass(*mesh);
    spd += SparseMat((k * 0.2) * assemble_stiffness(*mesh));
    spd += SparseMat((k * 0.5) * assemble_cubic_weight(*mesh, w));
    SparseMat coupling =
        SparseMat((k * 4.0) * assemble_cross_convection(*mesh, w));
    Eigen::VectorXd b(coupling.rows());
    for (int i = 0; i < b.size(); ++i) b[i] = dist(gen);
    BlockSystemSolver solver;
    auto [x, report] = solver.solve(spd, coupling, b, 1e-12);
    CHECK(report.relative_residual <= 1e-12);
    const SparseMat full = expand_blocks(spd) + coupling;
    CHECK((full * x - b).norm() / b.norm() <= 1e-12);
  }
}

TEST_CASE("block solver pattern reuse gives identical results") {
  auto mesh = Mesh::unit_square(4);
  auto& gen = testsup::rng(83);
  FeField w1 = testsup::random_field(mesh, gen);
  FeField w2 = testsup::random_field(mesh, gen);
  SparseMat spd = 1.01 * assemble_mass(*mesh);
  spd += SparseMat(0.002 * assemble_stiffness(*mesh));
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::VectorXd b(3 * mesh->n_nodes());
  for (int i = 0; i < b.size(); ++i) b[i] = dist(gen);

  BlockSystemSolver reused;
  auto [x1a, r1a] =
      reused.solve(spd, SparseMat(0.04 * assemble_cross_convection(*mesh, w1)),
                   b, 1e-12);
  auto [x2a, r2a] =
      reused.solve(spd, SparseMat(0.04 * assemble_cross_convection(*mesh, w2)),
                   b, 1e-12);
  BlockSystemSolver fresh;
  auto [x2b, r2b] =
      fresh.solve(spd, SparseMat(0.04 * assemble_cross_convection(*mesh, w2)),
                  b, 1e-12);
  CHECK((x2a - x2b).lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("SpdFactor per-component solve") {
  auto mesh = Mesh::interval(12);
  SparseMat m = assemble_mass(*mesh);
  SpdFactor factor(m);
  FeField f = testsup::random_field(mesh, testsup::rng(89));
  auto [x, report] = factor.solve_per_component(f.values(), 1e-12);
  CHECK(report.relative_residual <= 1e-12);
  CHECK((apply_per_component(m, x) - f.values()).norm() /
            f.values().norm() <= 1e-12);
}

} // TEST_SUITE
