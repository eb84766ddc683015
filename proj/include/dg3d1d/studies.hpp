#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dg3d1d/timestepping.hpp"
#include "dg3d1d/verify.hpp"

namespace dg3d1d {

struct LevelReport {
  std::string level;
  double h = 0.0;
  Index dofs = 0;
  SolverReport solver;
  double seconds = 0.0;
  /// Largest conservation defect at multiplier vertices.
  double conservation = 0.0;
};

/// Filled level by level so that a failure leaves the completed rows.
struct StudyResult {
  RateTable table;
  std::vector<LevelReport> levels;
  /// Finest solved system and its solution, for field output.
  std::unique_ptr<CoupledSystem> system;
  std::vector<double> solution;
  std::vector<std::string> notes;

  explicit StudyResult(std::vector<std::string> names) : table(std::move(names)) {}
};

/// Single-vessel steady study over box resolutions `levels` (strictly
/// increasing), 1D cell size 1/N. Columns h1_3d, l2_3d, h1_1d, l2_1d.
void run_mms3d(const std::vector<int>& levels, const SystemOptions& options, StudyResult& out);

/// Eight-vertex tree over 1D sizes `hs` (strictly decreasing). Columns
/// dg_norm and flux_residual.
void run_mms_network(const std::vector<double>& hs, const SystemOptions& options,
                     StudyResult& out);

struct HeatOptions {
  int n = 4;
  double final_time = 0.5;
  std::vector<int> steps{5, 10, 20};
};

/// Backward Euler on the affine time pair at fixed mesh over the given step
/// counts. Columns l2_3d and l2_1d at the final time; h holds tau.
void run_heat(const HeatOptions& heat, const SystemOptions& options, StudyResult& out);

/// Uncoupled (xi = 0) heat decay from a bump with f = 0 and zero Dirichlet
/// data; returns the 3D L2 norm after every step, starting with the
/// projected initial state.
std::vector<double> dissipation_history(int n, double tau, int steps, const SystemOptions& options);

}  // namespace dg3d1d
