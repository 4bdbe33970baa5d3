// SPDX-License-Identifier: Apache-2.0
#include "sllb/runner.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <nlohmann/json.hpp>
#include <sstream>

#include "sllb/experiments.hpp"
#include "sllb/observables.hpp"

namespace sllb {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

namespace {

// Shortest round-trip form, for labels.
std::string format_short(double v) {
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

} // namespace

namespace {

SimulationSetup resolve_simulation(const RunConfig& c) {
  auto preset = [&](const std::string& name) -> SimulationSetup {
    if (name == "sim1") return simulation1();
    if (name == "sim2") return simulation2();
    if (name == "sim3") return simulation3(noise_level_from_string(c.noise));
    throw ConfigError("unknown simulation '" + name + "'");
  };
  if (c.simulation != "custom") return preset(c.simulation);

  SimulationSetup s = preset(c.fields);
  s.name = "custom";
  s.kappa1 = c.kappa1;
  s.gamma = c.gamma;
  s.kappa2 = c.kappa2;
  s.mu = c.mu;
  if (!(s.kappa1 > 0 && s.gamma > 0 && s.kappa2 > 0 && s.mu > 0))
    throw ConfigError("custom coefficients must be positive");
  return s;
}

SchemeKind resolve_scheme(const RunConfig& c, const SimulationSetup& sim) {
  if (c.scheme.empty()) return sim.default_scheme;
  try {
    return scheme_from_string(c.scheme);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

std::string join_ints(const std::vector<int>& v) {
  std::ostringstream out;
  for (size_t i = 0; i < v.size(); ++i) out << (i ? " " : "") << v[i];
  return out.str();
}

std::string join_doubles(const std::vector<double>& v) {
  std::ostringstream out;
  for (size_t i = 0; i < v.size(); ++i)
    out << (i ? " " : "") << format_double(v[i]);
  return out.str();
}

void write_manifest(const fs::path& dir, const RunConfig& c,
                    const SimulationSetup& sim, SchemeKind scheme, double T,
                    int paths) {
  std::ofstream out(dir / "manifest.txt");
  out << "[run]\n";  // feedable back through --config
  out << "simulation = " << c.simulation << "\n";
  out << "study = " << c.study << "\n";
  out << "scheme = " << to_string(scheme) << "\n";
  out << "kappa1 = " << format_double(sim.kappa1) << "\n";
  out << "gamma = " << format_double(sim.gamma) << "\n";
  out << "kappa2 = " << format_double(sim.kappa2) << "\n";
  out << "mu = " << format_double(sim.mu) << "\n";
  out << "seed = " << c.seed << "\n";
  out << "m = " << paths << "\n";
  out << "T = " << format_double(T) << "\n";
  out << "noise = " << c.noise << "\n";
  out << "h-levels = " << join_ints(c.h_levels) << "\n";
  out << "ref-h = " << c.ref_h << "\n";
  out << "k-levels = " << join_ints(c.k_levels) << "\n";
  out << "ref-k = " << c.ref_k << "\n";
  out << "fixed-k-inv = " << c.fixed_k_inverse << "\n";
  out << "fixed-mesh-n = " << c.fixed_mesh_n << "\n";
  out << "mesh-n = " << c.mesh_n << "\n";
  out << "k-inv = " << c.k_inverse << "\n";
  out << "eps = " << join_doubles(c.epsilons) << "\n";
  out << "window-lo = " << format_double(c.window_lo) << "\n";
  out << "window-hi = " << format_double(c.window_hi) << "\n";
  out << "threads = " << c.threads << "\n";
  out << "out = " << c.out_dir << "\n";
}

void write_json(const fs::path& file, const json& j) {
  std::ofstream out(file);
  out << j.dump(2) << "\n";
}

json convergence_json(const ConvergenceTable& table) {
  json rows = json::array();
  for (const auto& row : table.levels)
    rows.push_back({{"level", row.level_value}, {"E_0", row.e0}, {"E_1", row.e1}});
  return {{"axis", table.axis == Axis::spatial ? "spatial" : "temporal"},
          {"levels", rows},
          {"fitted_order_E0", table.fitted_slope_0},
          {"fitted_order_E1", table.fitted_slope_1},
          {"paths", table.paths}};
}

void run_convergence(const RunConfig& c, const SimulationSetup& sim,
                     SchemeKind scheme, const fs::path& dir, bool spatial) {
  ConvergenceConfig cc;
  cc.sim = sim;
  cc.scheme = scheme;
  cc.axis = spatial ? Axis::spatial : Axis::temporal;
  cc.levels = spatial ? c.h_levels : c.k_levels;
  cc.reference_level = spatial ? c.ref_h : c.ref_k;
  cc.fixed_inverse = spatial ? c.fixed_k_inverse : c.fixed_mesh_n;
  cc.T = c.T.value_or(0.2);
  cc.paths = c.paths.value_or(50);
  cc.seed = c.seed;
  cc.threads = c.threads;

  const ConvergenceTable table = convergence_study(cc);

  std::ofstream csv(dir / "convergence.csv");
  csv << "level,E_0,E_1\n";
  for (const auto& row : table.levels)
    csv << format_double(row.level_value) << "," << format_double(row.e0)
        << "," << format_double(row.e1) << "\n";

  write_json(dir / "summary.json", convergence_json(table));
}

void run_energy(const RunConfig& c, const SimulationSetup& sim,
                SchemeKind scheme, const fs::path& dir) {
  EnergyConfig ec;
  ec.sim = sim;
  ec.scheme = scheme;
  ec.mesh_n = c.mesh_n;
  ec.k_inverse = c.k_inverse;
  ec.T = c.T.value_or(1.0);
  ec.paths = c.paths.value_or(30);
  ec.seed = c.seed;
  ec.threads = c.threads;

  const EnergyStudyResult result = energy_study(ec);

  std::ofstream csv(dir / "energy.csv");
  csv << "t,path_id,energy\n";
  for (size_t p = 0; p < result.per_path.size(); ++p)
    for (size_t n = 0; n < result.times.size(); ++n)
      csv << format_double(result.times[n]) << "," << p << ","
          << format_double(result.per_path[p][n]) << "\n";

  std::ofstream mean_csv(dir / "energy_mean.csv");
  mean_csv << "t,mean\n";
  for (size_t n = 0; n < result.times.size(); ++n)
    mean_csv << format_double(result.times[n]) << ","
             << format_double(result.mean[n]) << "\n";

  write_json(dir / "summary.json",
             {{"paths", ec.paths},
              {"mesh_n", ec.mesh_n},
              {"k_inverse", ec.k_inverse},
              {"initial_energy", result.mean.front()},
              {"final_mean_energy", result.mean.back()}});
}

void run_stability(const RunConfig& c, const fs::path& dir) {
  if (c.simulation != "sim3")
    throw ConfigError("the stability study is defined by simulation sim3");
  StabilityConfig sc;
  try {
    sc.noise = noise_level_from_string(c.noise);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  sc.epsilons = c.epsilons;
  sc.mesh_n = c.mesh_n;
  sc.k_inverse = c.k_inverse;
  sc.T = c.T.value_or(2.0);
  sc.paths = c.paths.value_or(30);
  sc.fit_window_lo = c.window_lo;
  sc.fit_window_hi = c.window_hi;
  sc.seed = c.seed;
  sc.threads = c.threads;

  const StabilityResult result = stability_study(sc);

  std::ofstream csv(dir / "stability.csv");
  csv << "t";
  for (const auto& curve : result.curves)
    csv << ",mean_eps_" << format_short(curve.epsilon);
  csv << "\n";
  for (size_t n = 0; n < result.times.size(); ++n) {
    csv << format_double(result.times[n]);
    for (const auto& curve : result.curves)
      csv << "," << format_double(curve.mean_sq_diff[n]);
    csv << "\n";
  }

  json fits = json::array();
  for (const auto& curve : result.curves) {
    json f = {{"epsilon", curve.epsilon},
              {"initial_mean", curve.mean_sq_diff.front()}};
    if (curve.decay_fit) {
      f["lambda"] = curve.lambda;
      f["r_squared"] = curve.decay_fit->r_squared;
      f["fit_reliable"] =
          curve.lambda > 0.0 && curve.decay_fit->r_squared >= 0.5;
    } else {
      f["fit_reliable"] = false;
      f["fit_skipped"] = "nonpositive mean inside the fit window";
    }
    fits.push_back(f);
  }
  write_json(dir / "summary.json",
             {{"noise", to_string(sc.noise)},
              {"paths", sc.paths},
              {"fit_window", {sc.fit_window_lo, sc.fit_window_hi}},
              {"curves", fits}});
}

void run_single(const RunConfig& c, const SimulationSetup& sim,
                SchemeKind scheme, const fs::path& dir) {
  const MeshPtr mesh = sim.dim == 1 ? Mesh::interval(c.mesh_n)
                                    : Mesh::unit_square(c.mesh_n);
  FemOperators ops(mesh);
  const FeField u0 = ops.l2_project(sim.initial_data);
  const FeField g = ops.l2_project(sim.noise_coefficient);

  const double T = c.T.value_or(0.4);
  const double k = 1.0 / c.k_inverse;
  const int n_steps = static_cast<int>(std::lround(T * c.k_inverse));
  if (n_steps < 1) throw ConfigError("single_run: T shorter than one step");
  SchemeParams params = sim.make_params(k, (n_steps + 0.5) * k, scheme);

  std::ofstream csv(dir / "energy.csv");
  csv << "t,path_id,energy\n";
  Observer record = [&](int, double t, const FeField& u, const StepReport*) {
    csv << format_double(t) << ",0," << format_double(energy(u, params, ops))
        << "\n";
  };

  const NoisePath path = generate_path(c.seed, 0, k, n_steps);
  const TrajectorySummary summary =
      run_trajectory(u0, g, path, 1, params, ops, {record});

  std::ofstream field_csv(dir / "field_final.csv");
  field_csv << "x,y,u_x,u_y,u_z\n";
  for (int i = 0; i < mesh->n_nodes(); ++i) {
    const Eigen::Vector3d v = summary.final_state.at(i);
    field_csv << format_double(mesh->node(i).x()) << ","
              << format_double(mesh->node(i).y()) << ","
              << format_double(v.x()) << "," << format_double(v.y()) << ","
              << format_double(v.z()) << "\n";
  }

  const Norms n = ops.norms(summary.final_state);
  write_json(dir / "summary.json",
             {{"steps", n_steps},
              {"final_l2", n.l2},
              {"final_h1_semi", n.h1_semi},
              {"final_energy", energy(summary.final_state, params, ops)}});
}

} // namespace

int run_study(const RunConfig& config) {
  static const std::map<std::string, int> studies = {
      {"convergence_spatial", 0},
      {"convergence_temporal", 1},
      {"energy", 2},
      {"stability", 3},
      {"single_run", 4}};
  const auto it = studies.find(config.study);
  if (it == studies.end())
    throw ConfigError("unknown study '" + config.study + "'");

  const SimulationSetup sim = resolve_simulation(config);
  const SchemeKind scheme = resolve_scheme(config, sim);

  const fs::path dir(config.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + dir.string());

  double T_default[] = {0.2, 0.2, 1.0, 2.0, 0.4};
  int paths_default[] = {50, 50, 30, 30, 1};
  write_manifest(dir, config, sim, scheme,
                 config.T.value_or(T_default[it->second]),
                 config.paths.value_or(paths_default[it->second]));

  try {
    switch (it->second) {
      case 0: run_convergence(config, sim, scheme, dir, true); break;
      case 1: run_convergence(config, sim, scheme, dir, false); break;
      case 2: run_energy(config, sim, scheme, dir); break;
      case 3: run_stability(config, dir); break;
      case 4: run_single(config, sim, scheme, dir); break;
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& err) {
    // Bad level lists and similar configuration-shaped inputs.
    throw ConfigError(err.what());
  } catch (const std::exception& err) {
    std::cerr << "study failed: " << err.what() << "\n";
    return 1;
  }
  return 0;
}

} // namespace sllb
