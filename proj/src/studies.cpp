#include "dg3d1d/studies.hpp"

#include <chrono>
#include <cmath>
#include <numbers>

#include "dg3d1d/errors.hpp"

namespace dg3d1d {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

void run_mms3d(const std::vector<int>& levels, const SystemOptions& options, StudyResult& out) {
  if (levels.empty()) throw InvalidArgument("at least one level is required");
  const Mms3d1d mms;
  const ExactPair exact{[&](const Vec3& p) { return mms.u(p); },
                        [&](const Vec3& p) { return mms.grad_u(p); },
                        [&](Index, double s) { return mms.u_hat(s - 0.5); },
                        [&](Index, double s) { return mms.du_hat(s - 0.5); }};
  for (const int n : levels) {
    if (n < 1) throw InvalidArgument("box resolution must be positive");
    const auto t0 = std::chrono::steady_clock::now();
    auto system = std::make_unique<CoupledSystem>(build_box_mesh(n, mms.lo(), mms.hi()),
                                                  mms.graph(),
                                                  build_edge_meshes(mms.graph(), 1.0 / n), options);
    auto sol = system->solve(mms.data());
    const auto e = error_norms(*system, sol.x, exact);
    out.table.add(std::to_string(n), 1.0 / n, {e.h1_3d, e.l2_3d, e.h1_1d, e.l2_1d});
    out.levels.push_back({std::to_string(n), 1.0 / n, system->size(), sol.report, seconds_since(t0),
                          0.0});
    out.system = std::move(system);
    out.solution = std::move(sol.x);
  }
}

void run_mms_network(const std::vector<double>& hs, const SystemOptions& options,
                     StudyResult& out) {
  if (hs.empty()) throw InvalidArgument("at least one mesh size is required");
  const MmsNetwork mms;
  const auto u_hat = [&](Index e, double s) { return mms.u_hat(e, s); };
  const auto du_hat = [&](Index e, double s) { return mms.du_hat(e, s); };
  for (const double h : hs) {
    const auto t0 = std::chrono::steady_clock::now();
    auto system = std::make_unique<CoupledSystem>(std::nullopt, mms.graph(),
                                                  build_edge_meshes(mms.graph(), h), options,
                                                  mms.dirichlet_vertices());
    auto sol = system->solve(mms.data());
    const auto st = system->split(sol.x);
    char label[32];
    std::snprintf(label, sizeof label, "%.3e", h);
    out.table.add(label, h,
                  {dg_norm_network(*system, sol.x, u_hat, du_hat), flux_residual(system->space1(), st.u1)});
    out.levels.push_back({label, h, system->size(), sol.report, seconds_since(t0),
                          max_conservation_defect(*system, sol.x)});
    out.system = std::move(system);
    out.solution = std::move(sol.x);
  }
}

void run_heat(const HeatOptions& heat, const SystemOptions& options, StudyResult& out) {
  const Mms3d1d geometry;
  const MmsTime mms;
  auto system = std::make_unique<CoupledSystem>(
      build_box_mesh(heat.n, geometry.lo(), geometry.hi()), geometry.graph(),
      build_edge_meshes(geometry.graph(), 1.0 / heat.n), options);
  const double t_end = heat.final_time;
  const ExactPair exact{[&](const Vec3& p) { return mms.u(t_end, p); },
                        [&](const Vec3&) { return Vec3(mms.bx, mms.by, 0.0) * std::exp(-t_end); },
                        [&](Index, double) { return mms.u_hat(t_end); },
                        [&](Index, double) { return 0.0; }};
  for (const int steps : heat.steps) {
    const auto t0 = std::chrono::steady_clock::now();
    const TimeGrid grid(heat.final_time, steps);
    auto state = l2_project_initial(
        *system, [&](const Vec3& p) { return mms.u(0.0, p); },
        [&](Index, double) { return mms.u_hat(0.0); });
    const BackwardEuler be(*system, grid.tau());
    SolverReport worst{0, 0.0, true};
    while (state.step < grid.steps) {
      SolverReport r;
      state = be.step(state, mms.data(grid.time(state.step + 1)), &r);
      worst.iterations = std::max(worst.iterations, r.iterations);
      worst.relative_residual = std::max(worst.relative_residual, r.relative_residual);
    }
    const auto e = error_norms(*system, state.x, exact);
    out.table.add(std::to_string(steps), grid.tau(), {e.l2_3d, e.l2_1d});
    out.levels.push_back({std::to_string(steps), grid.tau(), system->size(), worst,
                          seconds_since(t0), 0.0});
    out.solution = std::move(state.x);
  }
  out.system = std::move(system);
}

std::vector<double> dissipation_history(int n, double tau, int steps, const SystemOptions& options) {
  Mms3d1d geometry;
  geometry.xi = 0.0;
  const CoupledSystem system(build_box_mesh(n, geometry.lo(), geometry.hi()), geometry.graph(),
                             build_edge_meshes(geometry.graph(), 1.0 / n), options);
  constexpr double pi = std::numbers::pi;
  auto state = l2_project_initial(
      system,
      [&](const Vec3& p) {
        return std::cos(pi * p.x()) * std::cos(pi * p.y()) * std::cos(pi * p.z()) + 0.5;
      },
      [](Index, double) { return 1.0; });
  std::vector<double> norms{l2_norm_3d(system, state.x)};
  const BackwardEuler be(system, tau);
  const ProblemData zero;
  for (int i = 0; i < steps; ++i) {
    state = be.step(state, zero);
    norms.push_back(l2_norm_3d(system, state.x));
  }
  return norms;
}

}  // namespace dg3d1d
