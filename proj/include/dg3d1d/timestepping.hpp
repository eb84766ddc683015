#pragma once

#include <functional>
#include <vector>

#include "dg3d1d/system.hpp"

namespace dg3d1d {

/// Uniform partition of [0, T] into `steps` intervals.
struct TimeGrid {
  double final_time;
  int steps;

  TimeGrid(double final_time, int steps);
  [[nodiscard]] double tau() const { return final_time / steps; }
  [[nodiscard]] double time(int n) const { return n * tau(); }
};

struct TransientState {
  std::vector<double> x;  ///< [3D | 1D | multipliers]
  int step = 0;
};

/// Cell-wise L2 projections of u0 and u^0; multipliers start at zero.
TransientState l2_project_initial(const CoupledSystem& system, const ScalarField3& u0,
                                  const ScalarField1& u_hat0);

/// Backward Euler: (M/tau + A) x^n = M/tau x^{n-1} + F^n. The step operator
/// is composed once per time step size.
class BackwardEuler {
 public:
  BackwardEuler(const CoupledSystem& system, double tau);

  [[nodiscard]] double tau() const { return tau_; }
  [[nodiscard]] const SparseMatrix& step_operator() const { return op_; }

  /// Advances one step with data evaluated at t^{n+1}. The previous state is
  /// the CG initial guess.
  TransientState step(const TransientState& state, const ProblemData& data,
                      SolverReport* report = nullptr) const;

 private:
  const CoupledSystem* system_;
  double tau_;
  SparseMatrix op_;
};

/// Runs all steps of `grid`; `data(t)` gives the right-hand side data and
/// `observe` (optional) sees every state including the initial one.
TransientState integrate(const CoupledSystem& system, const TimeGrid& grid,
                         TransientState initial,
                         const std::function<ProblemData(double)>& data,
                         const std::function<void(const TransientState&, double)>& observe = {});

/// L2 norm of the 3D part of a state.
double l2_norm_3d(const CoupledSystem& system, std::span<const double> x);

}  // namespace dg3d1d
