#include "dg3d1d/timestepping.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "dg3d1d/errors.hpp"

namespace dg3d1d {

TimeGrid::TimeGrid(double final_time, int steps) : final_time(final_time), steps(steps) {
  if (!(final_time > 0.0)) throw InvalidArgument("final time must be positive");
  if (steps < 1) throw InvalidArgument("number of time steps must be at least 1");
}

TransientState l2_project_initial(const CoupledSystem& system, const ScalarField3& u0,
                                  const ScalarField1& u_hat0) {
  TransientState s;
  s.x.assign(static_cast<std::size_t>(system.size()), 0.0);
  if (system.has_3d() && u0) {
    const auto p3 = l2_project_3d(system.space3(), u0, system.rules().tet_error);
    std::copy(p3.begin(), p3.end(), s.x.begin());
  }
  if (u_hat0) {
    const auto p1 = l2_project_1d(system.space1(), u_hat0, system.rules().interval_error);
    std::copy(p1.begin(), p1.end(), s.x.begin() + system.n3());
  }
  return s;
}

BackwardEuler::BackwardEuler(const CoupledSystem& system, double tau)
    : system_(&system), tau_(tau) {
  if (!(tau > 0.0)) throw InvalidArgument("time step must be positive");
  const std::array<BlockEntry, 2> blocks{BlockEntry{0, 0, &system.mass(), 1.0 / tau},
                                         BlockEntry{0, 0, &system.matrix(), 1.0}};
  op_ = block_compose(system.size(), system.size(), blocks);
}

TransientState BackwardEuler::step(const TransientState& state, const ProblemData& data,
                                   SolverReport* report) const {
  auto b = system_->rhs(data);
  const auto mx = spmv(system_->mass(), state.x);
  for (std::size_t i = 0; i < b.size(); ++i) b[i] += mx[i] / tau_;
  auto res = cg_solve(op_, b, system_->options().cg, state.x);
  if (report) *report = res.report;
  return {std::move(res.x), state.step + 1};
}

TransientState integrate(const CoupledSystem& system, const TimeGrid& grid,
                         TransientState initial,
                         const std::function<ProblemData(double)>& data,
                         const std::function<void(const TransientState&, double)>& observe) {
  const BackwardEuler be(system, grid.tau());
  TransientState s = std::move(initial);
  if (observe) observe(s, grid.time(s.step));
  while (s.step < grid.steps) {
    s = be.step(s, data(grid.time(s.step + 1)));
    if (observe) observe(s, grid.time(s.step));
  }
  return s;
}

double l2_norm_3d(const CoupledSystem& system, std::span<const double> x) {
  if (!system.has_3d()) return 0.0;
  const auto u3 = system.split(x).u3;
  const auto m = spmv(system.mass(), x);
  double sum = 0.0;
  for (Index i = 0; i < system.n3(); ++i) sum += u3[i] * m[i];
  return std::sqrt(std::max(sum, 0.0));
}

}  // namespace dg3d1d
