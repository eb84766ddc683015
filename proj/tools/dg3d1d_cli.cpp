// Command-line driver: convergence studies and network solves.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dg3d1d/errors.hpp"
#include "dg3d1d/io.hpp"
#include "dg3d1d/studies.hpp"

namespace fs = std::filesystem;
using dg3d1d::Index;
using dg3d1d::RunConfig;
using nlohmann::json;

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitGeometry = 3;
constexpr int kExitSolver = 4;

void add_common(CLI::App& sub, RunConfig& c) {
  sub.add_option("--config", "key=value file; command-line flags take precedence");
  sub.add_option("-o,--output", c.output, "Output directory")->capture_default_str();
  sub.add_option("--eps1", c.eps1, "3D variant: -1 symmetric, 0 incomplete, 1 non-symmetric")
      ->capture_default_str();
  sub.add_option("--eps2", c.eps2, "1D variant")->capture_default_str();
  sub.add_option("--sigma-omega", c.sigma_omega, "3D penalty")->capture_default_str();
  sub.add_option("--sigma-lambda", c.sigma_lambda, "1D interior penalty")->capture_default_str();
  sub.add_option("--sigma-v", c.sigma_v, "Vertex penalty")->capture_default_str();
  sub.add_option("--circle-points", c.circle_points, "Points per circle average")
      ->capture_default_str();
  sub.add_option("--k2", c.k2, "1D polynomial degree (1 or 2)")->capture_default_str();
  sub.add_option("--average-sampling", c.average_sampling,
                 "Circle averages at Gauss points (gauss) or at 1D nodes (nodal)")
      ->capture_default_str();
  sub.add_option("--tol", c.tol, "CG relative residual tolerance")->capture_default_str();
  sub.add_option("--max-iter", c.max_iter, "CG iteration limit")->capture_default_str();
  sub.add_option("--seed", c.seed, "Recorded in the report")->capture_default_str();
  sub.add_flag("--write-matrix", c.write_matrix, "Also write the system matrix (MatrixMarket)");
}

json solver_json(const dg3d1d::SolverReport& r) {
  return {{"iterations", r.iterations},
          {"relative_residual", r.relative_residual},
          {"converged", r.converged}};
}

json levels_json(const dg3d1d::StudyResult& res) {
  json arr = json::array();
  for (const auto& l : res.levels)
    arr.push_back({{"level", l.level},
                   {"h", l.h},
                   {"dofs", l.dofs},
                   {"solver", solver_json(l.solver)},
                   {"seconds", l.seconds},
                   {"conservation_defect", l.conservation}});
  return arr;
}

json table_json(const dg3d1d::RateTable& t) {
  json arr = json::array();
  for (const auto& row : t.rows()) {
    json r{{"level", row.level}, {"h", row.h}};
    for (std::size_t i = 0; i < t.names().size(); ++i) {
      r[t.names()[i]] = row.errors[i];
      r[t.names()[i] + "_rate"] = std::isnan(row.rates[i]) ? json(nullptr) : json(row.rates[i]);
    }
    arr.push_back(r);
  }
  return arr;
}

void write_report(const RunConfig& c, const json& body) {
  json report = body;
  report["config"] = json::parse(c.to_json());
  dg3d1d::write_text_file((fs::path(c.output) / "report.json").string(), report.dump(2) + "\n");
}

void write_fields(const RunConfig& c, const dg3d1d::CoupledSystem& sys, std::span<const double> x) {
  const auto st = sys.split(x);
  const fs::path out(c.output);
  if (sys.has_3d()) dg3d1d::write_vtk_3d((out / "u3d.vtk").string(), sys.space3(), st.u3);
  dg3d1d::write_vtk_1d((out / "u1d.vtk").string(), sys.space1(), st.u1);
  if (c.write_matrix) dg3d1d::write_matrix_market(sys.matrix(), (out / "matrix.mtx").string());
}

enum class Study { mms3d, network, heat };

// Runs a study, writing rates.csv and report.json even when a level fails.
int run_study(const RunConfig& c, Study kind) {
  const auto opts = c.system_options();
  std::unique_ptr<dg3d1d::StudyResult> res;
  std::vector<int> levels;
  std::vector<double> hs;
  dg3d1d::HeatOptions heat;
  switch (kind) {
    case Study::mms3d:
      levels = dg3d1d::parse_int_list(c.levels, "levels");
      res = std::make_unique<dg3d1d::StudyResult>(
          std::vector<std::string>{"h1_3d", "l2_3d", "h1_1d", "l2_1d"});
      break;
    case Study::network:
      hs = dg3d1d::parse_double_list(c.levels, "levels");
      res = std::make_unique<dg3d1d::StudyResult>(
          std::vector<std::string>{"dg_norm", "flux_residual"});
      break;
    case Study::heat:
      heat.n = c.mesh_n;
      heat.final_time = c.final_time;
      heat.steps = dg3d1d::parse_int_list(c.steps, "steps");
      res = std::make_unique<dg3d1d::StudyResult>(std::vector<std::string>{"l2_3d", "l2_1d"});
      break;
  }
  fs::create_directories(c.output);
  json body{{"command", c.command}};
  int code = 0;
  try {
    switch (kind) {
      case Study::mms3d: dg3d1d::run_mms3d(levels, opts, *res); break;
      case Study::network: dg3d1d::run_mms_network(hs, opts, *res); break;
      case Study::heat: {
        dg3d1d::run_heat(heat, opts, *res);
        const auto norms = dg3d1d::dissipation_history(heat.n, c.tau, 10, opts);
        bool monotone = true;
        for (std::size_t i = 1; i < norms.size(); ++i) monotone = monotone && norms[i] < norms[i - 1];
        body["dissipation"] = {{"tau", c.tau}, {"l2_norms", norms}, {"strictly_decreasing", monotone}};
        break;
      }
    }
  } catch (const dg3d1d::SolverError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    body["error"] = e.what();
    code = kExitSolver;
  }
  double worst_defect = 0.0;
  for (const auto& l : res->levels) worst_defect = std::max(worst_defect, l.conservation);
  if (kind == Study::network && worst_defect > 1e-8)
    std::cerr << "warning: conservation defect " << worst_defect << " exceeds 1e-8\n";
  body["levels"] = levels_json(*res);
  body["rates"] = table_json(res->table);
  dg3d1d::write_text_file((fs::path(c.output) / "rates.csv").string(), res->table.to_csv());
  write_report(c, body);
  if (code == 0 && res->system) write_fields(c, *res->system, res->solution);
  std::cout << res->table.to_csv();
  return code;
}

// Box around the graph: bounding box grown by the largest radius plus
// `margin` times the largest extent, or the explicit --box.
std::pair<dg3d1d::Vec3, dg3d1d::Vec3> solve_box(const RunConfig& c, const dg3d1d::VesselGraph& g) {
  if (!c.box.empty()) {
    const auto b = dg3d1d::parse_double_list(c.box, "box");
    return {dg3d1d::Vec3(b[0], b[1], b[2]), dg3d1d::Vec3(b[3], b[4], b[5])};
  }
  dg3d1d::Vec3 lo = dg3d1d::Vec3::Constant(std::numeric_limits<double>::infinity());
  dg3d1d::Vec3 hi = -lo;
  double rmax = 0.0;
  for (const auto& v : g.vertices()) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  for (const auto& e : g.edges()) rmax = std::max(rmax, e.radius);
  const double pad = rmax + c.margin * (hi - lo).maxCoeff();
  return {lo.array() - pad, hi.array() + pad};
}

int run_solve(const RunConfig& c) {
  if (c.network.empty()) throw dg3d1d::InvalidArgument("solve needs --network <file>");
  auto graph = dg3d1d::read_network(c.network, c.xi);
  const auto [lo, hi] = solve_box(c, graph);
  const double h_lambda = c.h_lambda > 0.0 ? c.h_lambda : (hi - lo).maxCoeff() / c.mesh_n;
  std::vector<std::string> warnings;
  if (auto w = c.system_options().ipdg1.sigma_v_warning(graph)) warnings.push_back(*w);

  const auto t0 = std::chrono::steady_clock::now();
  auto meshes = dg3d1d::build_edge_meshes(graph, h_lambda);
  const dg3d1d::CoupledSystem sys(dg3d1d::build_box_mesh(c.mesh_n, lo, hi), std::move(graph),
                                  std::move(meshes), c.system_options());
  dg3d1d::ProblemData data;
  const double f = c.f, f_hat = c.f_hat;
  if (f != 0.0) data.f = [f](const dg3d1d::Vec3&) { return f; };
  if (f_hat != 0.0) data.f_hat = [f_hat](Index, double) { return f_hat; };

  fs::create_directories(c.output);
  json body{{"command", c.command},
            {"box", {{"lo", {lo.x(), lo.y(), lo.z()}}, {"hi", {hi.x(), hi.y(), hi.z()}}}},
            {"h_lambda", h_lambda},
            {"dofs", {{"3d", sys.n3()}, {"1d", sys.n1()}, {"multipliers", sys.nm()}}},
            {"warnings", warnings}};
  dg3d1d::Solution sol;
  try {
    sol = sys.solve(data);
  } catch (const dg3d1d::NonConvergenceError& e) {
    body["solver"] = solver_json(e.report());
    body["error"] = e.what();
    write_report(c, body);
    throw;
  } catch (const dg3d1d::SolverError& e) {
    body["error"] = e.what();
    write_report(c, body);
    throw;
  }
  const auto st = sys.split(sol.x);
  auto range = [](std::span<const double> v) {
    if (v.empty()) return json::array({nullptr, nullptr});
    const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
    return json::array({*mn, *mx});
  };
  body["solver"] = solver_json(sol.report);
  body["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  body["u3d_range"] = range(st.u3);
  body["u1d_range"] = range(st.u1);
  body["conservation_defect"] = dg3d1d::max_conservation_defect(sys, sol.x);
  body["flux_residual"] = dg3d1d::flux_residual(sys.space1(), st.u1);
  write_report(c, body);
  write_fields(c, sys, sol.x);
  std::cout << "solved " << sys.size() << " unknowns in " << sol.report.iterations
            << " CG iterations; report in " << (fs::path(c.output) / "report.json").string() << "\n";
  return 0;
}

// Expands `--config file` into `--key=value` tokens placed right after the
// subcommand name, so that later command-line flags override them.
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty() || args.empty()) return args;
  std::vector<std::string> inserted;
  for (const auto& [key, value] : dg3d1d::read_config_file(path)) {
    if (key == "config") throw dg3d1d::InvalidArgument("config files cannot include other config files");
    inserted.push_back("--" + key + "=" + value);
  }
  args.insert(args.begin() + 1, inserted.begin(), inserted.end());
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interior penalty DG solver for coupled 3D-1D diffusion", "dg3d1d"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  RunConfig mms3d;
  mms3d.command = "mms3d";
  mms3d.levels = "4,8,16";
  auto* s_mms3d = app.add_subcommand("mms3d", "Single-vessel manufactured solution study");
  add_common(*s_mms3d, mms3d);
  s_mms3d->add_option("--levels", mms3d.levels, "Box resolutions N, comma separated")
      ->capture_default_str();

  RunConfig net;
  net.command = "mms-network";
  net.levels = "0.5,0.25,0.125,0.0625,0.03125,0.015625,0.0078125";
  net.sigma_lambda = 10.0;
  net.sigma_v = 10.0;
  net.tol = 1e-12;
  auto* s_net = app.add_subcommand("mms-network", "Vessel-tree manufactured solution study");
  add_common(*s_net, net);
  s_net->add_option("--levels", net.levels, "1D mesh sizes, comma separated")->capture_default_str();

  RunConfig heat;
  heat.command = "heat";
  heat.mesh_n = 4;
  auto* s_heat = app.add_subcommand("heat", "Backward Euler temporal convergence and decay");
  add_common(*s_heat, heat);
  s_heat->add_option("--mesh-n", heat.mesh_n, "Box resolution")->capture_default_str();
  s_heat->add_option("--final-time", heat.final_time, "Final time")->capture_default_str();
  s_heat->add_option("--steps", heat.steps, "Step counts, comma separated")->capture_default_str();
  s_heat->add_option("--tau", heat.tau, "Step size of the decay run")->capture_default_str();

  RunConfig solve;
  solve.command = "solve";
  auto* s_solve = app.add_subcommand("solve", "Steady coupled solve on a network file");
  add_common(*s_solve, solve);
  s_solve->add_option("--mesh-n", solve.mesh_n, "Box resolution")->capture_default_str();
  s_solve->add_option("--network", solve.network, "Network JSON file");
  s_solve->add_option("--h-lambda", solve.h_lambda, "1D cell size (0: box extent / mesh-n); keep it no smaller than the 3D cell size")
      ->capture_default_str();
  s_solve->add_option("--xi", solve.xi, "Permeability for edges without one")->capture_default_str();
  s_solve->add_option("--f", solve.f, "Constant 3D source")->capture_default_str();
  s_solve->add_option("--f-hat", solve.f_hat, "Constant 1D source")->capture_default_str();
  s_solve->add_option("--margin", solve.margin, "Box margin relative to the graph extent")
      ->capture_default_str();
  s_solve->add_option("--box", solve.box, "Explicit box x0,y0,z0,x1,y1,z1");

  try {
    auto args = expand_config(argc, argv);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  } catch (const dg3d1d::InvalidArgument& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return kExitInvalid;
  }

  RunConfig* cfg = s_mms3d->parsed() ? &mms3d : s_net->parsed() ? &net : s_heat->parsed() ? &heat : &solve;
  try {
    cfg->validate();
    if (cfg == &mms3d) return run_study(*cfg, Study::mms3d);
    if (cfg == &net) return run_study(*cfg, Study::network);
    if (cfg == &heat) return run_study(*cfg, Study::heat);
    return run_solve(*cfg);
  } catch (const dg3d1d::InvalidArgument& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const dg3d1d::GeometryError& e) {
    std::cerr << "geometry error: " << e.what() << "\n";
    return kExitGeometry;
  } catch (const dg3d1d::MeshError& e) {
    std::cerr << "geometry error: " << e.what() << "\n";
    return kExitGeometry;
  } catch (const dg3d1d::SolverError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
