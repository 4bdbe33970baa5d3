// SPDX-License-Identifier: Apache-2.0
#include "sllb/experiments.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "sllb/observables.hpp"
#include "sllb/parallel.hpp"

namespace sllb {

Fit fit_slope(const std::vector<std::pair<double, double>>& points,
              FitModel model) {
  if (points.size() < 2)
    throw std::invalid_argument("fit_slope: need at least 2 points");
  std::vector<double> xs, ys;
  xs.reserve(points.size());
  ys.reserve(points.size());
  for (const auto& [x, y] : points) {
    if (y <= 0.0)
      throw std::invalid_argument("fit_slope: nonpositive value under log");
    if (model == FitModel::log_log) {
      if (x <= 0.0)
        throw std::invalid_argument("fit_slope: nonpositive abscissa under log");
      xs.push_back(std::log(x));
    } else {
      xs.push_back(x);
    }
    ys.push_back(std::log(y));
  }
  const auto n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0)
    throw std::invalid_argument("fit_slope: degenerate abscissae");

  Fit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ss_res += e * e;
  }
  fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

namespace {

struct LevelWorkspace {
  MeshPtr mesh;
  std::shared_ptr<const FemOperators> ops;
  FeField u0;
  FeField g;
};

LevelWorkspace make_level(const SimulationSetup& sim, int resolution) {
  LevelWorkspace lw;
  lw.mesh = sim.dim == 1 ? Mesh::interval(resolution)
                         : Mesh::unit_square(resolution);
  lw.ops = std::make_shared<const FemOperators>(lw.mesh);
  lw.u0 = lw.ops->l2_project(sim.initial_data);
  lw.g = lw.ops->l2_project(sim.noise_coefficient);
  return lw;
}

// Integer step count of a horizon that must be a multiple of the step.
int exact_steps(double T, int inverse_step) {
  const double raw = T * inverse_step;
  const int n = static_cast<int>(std::lround(raw));
  if (n < 1 || std::abs(raw - n) > 1e-9)
    throw std::invalid_argument(
        "horizon is not an integer multiple of the time step");
  return n;
}

// Horizon placed strictly between N and N+1 steps so that floor(T/k) == N
// is immune to rounding of 1/k.
double robust_horizon(double k, int n_steps) { return (n_steps + 0.5) * k; }

[[noreturn]] void rethrow_with_context(const StepFailure& err, int path,
                                       const std::string& level) {
  throw StepFailure("path " + std::to_string(path) + ", level " + level +
                        ": " + err.what(),
                    err.step_index);
}

} // namespace

ConvergenceTable convergence_study(const ConvergenceConfig& config) {
  if (config.levels.size() < 2)
    throw std::invalid_argument(
        "convergence_study: need at least 2 levels to fit a slope");
  for (size_t i = 1; i < config.levels.size(); ++i)
    if (config.levels[i] <= config.levels[i - 1])
      throw std::invalid_argument(
          "convergence_study: levels must be strictly increasing");
  for (int lvl : config.levels) {
    if (lvl < 1 || config.reference_level % lvl != 0 ||
        lvl >= config.reference_level)
      throw std::invalid_argument(
          "convergence_study: levels must divide the finer reference level");
  }
  if (config.paths < 1)
    throw std::invalid_argument("convergence_study: need at least one path");

  const size_t n_levels = config.levels.size();
  // per path, per level: squared E_0 and E_1
  std::vector<std::vector<std::pair<double, double>>> sq(
      config.paths, std::vector<std::pair<double, double>>(n_levels));

  if (config.axis == Axis::spatial) {
    const double k = 1.0 / config.fixed_inverse;
    const int n_steps = exact_steps(config.T, config.fixed_inverse);
    const SchemeParams params = config.sim.make_params(
        k, robust_horizon(k, n_steps), config.scheme);

    const LevelWorkspace ref = make_level(config.sim, config.reference_level);
    std::vector<LevelWorkspace> levels;
    levels.reserve(n_levels);
    for (int lvl : config.levels) levels.push_back(make_level(config.sim, lvl));

    parallel_for(config.paths, config.threads, [&](int p) {
      const NoisePath path = generate_path(config.seed, p, k, n_steps);
      FeField u_ref;
      try {
        u_ref = run_trajectory(ref.u0, ref.g, path, 1, params, *ref.ops)
                    .final_state;
      } catch (const StepFailure& err) {
        rethrow_with_context(err, p, "reference");
      }
      for (size_t l = 0; l < n_levels; ++l) {
        try {
          const FeField u = run_trajectory(levels[l].u0, levels[l].g, path, 1,
                                           params, *levels[l].ops)
                                .final_state;
          const double e0 = pathwise_error(u, u_ref, 0, *ref.ops);
          const double e1 = pathwise_error(u, u_ref, 1, *ref.ops);
          sq[p][l] = {e0 * e0, e1 * e1};
        } catch (const StepFailure& err) {
          rethrow_with_context(err, p, std::to_string(config.levels[l]));
        }
      }
    });
  } else {
    const LevelWorkspace lw = make_level(config.sim, config.fixed_inverse);
    const double k_ref = 1.0 / config.reference_level;
    const int n_ref = exact_steps(config.T, config.reference_level);
    const SchemeParams params_ref = config.sim.make_params(
        k_ref, robust_horizon(k_ref, n_ref), config.scheme);

    std::vector<int> factors(n_levels);
    std::vector<SchemeParams> params_lvl(n_levels);
    for (size_t l = 0; l < n_levels; ++l) {
      factors[l] = config.reference_level / config.levels[l];
      if (n_ref % factors[l] != 0)
        throw std::invalid_argument(
            "convergence_study: level step does not divide the horizon");
      const double k = factors[l] * k_ref;
      params_lvl[l] = config.sim.make_params(
          k, robust_horizon(k, n_ref / factors[l]), config.scheme);
    }

    parallel_for(config.paths, config.threads, [&](int p) {
      const NoisePath path = generate_path(config.seed, p, k_ref, n_ref);
      FeField u_ref;
      try {
        u_ref =
            run_trajectory(lw.u0, lw.g, path, 1, params_ref, *lw.ops).final_state;
      } catch (const StepFailure& err) {
        rethrow_with_context(err, p, "reference");
      }
      for (size_t l = 0; l < n_levels; ++l) {
        try {
          const FeField u = run_trajectory(lw.u0, lw.g, path, factors[l],
                                           params_lvl[l], *lw.ops)
                                .final_state;
          const double e0 = pathwise_error(u, u_ref, 0, *lw.ops);
          const double e1 = pathwise_error(u, u_ref, 1, *lw.ops);
          sq[p][l] = {e0 * e0, e1 * e1};
        } catch (const StepFailure& err) {
          rethrow_with_context(err, p, std::to_string(config.levels[l]));
        }
      }
    });
  }

  // Monte Carlo average of the squares, then the root: exactly the
  // L2(Omega)-norm estimator. Folding in path order keeps the result
  // independent of worker scheduling.
  ConvergenceTable table;
  table.axis = config.axis;
  table.paths = config.paths;
  std::vector<std::pair<double, double>> pts0, pts1;
  for (size_t l = 0; l < n_levels; ++l) {
    double s0 = 0.0, s1 = 0.0;
    for (int p = 0; p < config.paths; ++p) {
      s0 += sq[p][l].first;
      s1 += sq[p][l].second;
    }
    ConvergenceLevel row;
    row.level_value = 1.0 / config.levels[l];
    row.e0 = std::sqrt(s0 / config.paths);
    row.e1 = std::sqrt(s1 / config.paths);
    table.levels.push_back(row);
    pts0.emplace_back(row.level_value, row.e0);
    pts1.emplace_back(row.level_value, row.e1);
  }
  table.fitted_slope_0 = fit_slope(pts0, FitModel::log_log).slope;
  table.fitted_slope_1 = fit_slope(pts1, FitModel::log_log).slope;
  return table;
}

EnergyStudyResult energy_study(const EnergyConfig& config) {
  if (config.paths < 1)
    throw std::invalid_argument("energy_study: need at least one path");
  const LevelWorkspace lw = make_level(config.sim, config.mesh_n);
  const double k = 1.0 / config.k_inverse;
  const int n_steps = exact_steps(config.T, config.k_inverse);
  const SchemeParams params =
      config.sim.make_params(k, robust_horizon(k, n_steps), config.scheme);

  EnergyStudyResult result;
  result.times.resize(n_steps + 1);
  for (int n = 0; n <= n_steps; ++n) result.times[n] = n * k;
  result.per_path.assign(config.paths, {});

  parallel_for(config.paths, config.threads, [&](int p) {
    std::vector<double> series;
    series.reserve(n_steps + 1);
    Observer record = [&](int, double, const FeField& u, const StepReport*) {
      series.push_back(energy(u, params, *lw.ops));
    };
    const NoisePath path = generate_path(config.seed, p, k, n_steps);
    try {
      run_trajectory(lw.u0, lw.g, path, 1, params, *lw.ops, {record});
    } catch (const StepFailure& err) {
      rethrow_with_context(err, p, "energy");
    }
    result.per_path[p] = std::move(series);
  });

  result.mean.assign(n_steps + 1, 0.0);
  for (int p = 0; p < config.paths; ++p)
    for (int n = 0; n <= n_steps; ++n) result.mean[n] += result.per_path[p][n];
  for (auto& m : result.mean) m /= config.paths;
  return result;
}

StabilityResult stability_study(const StabilityConfig& config) {
  if (config.paths < 1)
    throw std::invalid_argument("stability_study: need at least one path");
  if (config.epsilons.empty())
    throw std::invalid_argument("stability_study: need at least one epsilon");

  const SimulationSetup sim = simulation3(config.noise);
  const LevelWorkspace lw = make_level(sim, config.mesh_n);
  const double k = 1.0 / config.k_inverse;
  const int n_steps = exact_steps(config.T, config.k_inverse);
  const SchemeParams params =
      sim.make_params(k, robust_horizon(k, n_steps), SchemeKind::semi_implicit);

  const size_t n_eps = config.epsilons.size();
  const int n_nodes = lw.mesh->n_nodes();

  // Perturbed twin initial data: the projection is linear, so adding the
  // constant (eps, 0, 0) nodally equals projecting u0 + (eps, 0, 0).
  std::vector<FeField> w0(n_eps, FeField(lw.mesh));
  for (size_t e = 0; e < n_eps; ++e) {
    Eigen::VectorXd vals = lw.u0.values();
    for (int i = 0; i < n_nodes; ++i) vals[3 * i] += config.epsilons[e];
    w0[e] = FeField(lw.mesh, std::move(vals));
  }

  // per path, per epsilon: ||v - w||^2 at every step
  std::vector<std::vector<std::vector<double>>> sq(
      config.paths,
      std::vector<std::vector<double>>(n_eps, std::vector<double>(n_steps + 1)));

  parallel_for(config.paths, config.threads, [&](int p) {
    const NoisePath path = generate_path(config.seed, p, k, n_steps);

    std::vector<Eigen::VectorXd> v_states;
    v_states.reserve(n_steps + 1);
    Observer keep = [&](int, double, const FeField& u, const StepReport*) {
      v_states.push_back(u.values());
    };
    try {
      run_trajectory(lw.u0, lw.g, path, 1, params, *lw.ops, {keep});
    } catch (const StepFailure& err) {
      rethrow_with_context(err, p, "unperturbed");
    }

    for (size_t e = 0; e < n_eps; ++e) {
      Observer diff = [&](int n, double, const FeField& u, const StepReport*) {
        const Eigen::VectorXd d = u.values() - v_states[n];
        sq[p][e][n] = dot_per_component(lw.ops->mass(), d, d);
      };
      try {
        run_trajectory(w0[e], lw.g, path, 1, params, *lw.ops, {diff});
      } catch (const StepFailure& err) {
        rethrow_with_context(err, p,
                             "eps=" + std::to_string(config.epsilons[e]));
      }
    }
  });

  StabilityResult result;
  result.fit_window_lo = config.fit_window_lo;
  result.fit_window_hi = config.fit_window_hi;
  result.times.resize(n_steps + 1);
  for (int n = 0; n <= n_steps; ++n) result.times[n] = n * k;

  for (size_t e = 0; e < n_eps; ++e) {
    StabilityCurve curve;
    curve.epsilon = config.epsilons[e];
    curve.mean_sq_diff.assign(n_steps + 1, 0.0);
    for (int p = 0; p < config.paths; ++p)
      for (int n = 0; n <= n_steps; ++n)
        curve.mean_sq_diff[n] += sq[p][e][n];
    for (auto& m : curve.mean_sq_diff) m /= config.paths;

    std::vector<std::pair<double, double>> window;
    bool log_ok = true;
    for (int n = 0; n <= n_steps; ++n) {
      const double t = result.times[n];
      if (t < config.fit_window_lo || t > config.fit_window_hi) continue;
      if (curve.mean_sq_diff[n] <= 0.0) {
        log_ok = false;
        break;
      }
      window.emplace_back(t, curve.mean_sq_diff[n]);
    }
    if (log_ok && window.size() >= 2) {
      curve.decay_fit = fit_slope(window, FitModel::semi_log);
      curve.lambda = -curve.decay_fit->slope;
    }
    result.curves.push_back(std::move(curve));
  }
  return result;
}

} // namespace sllb
