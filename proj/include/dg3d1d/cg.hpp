#pragma once

#include <span>
#include <string>
#include <vector>

#include "dg3d1d/errors.hpp"
#include "dg3d1d/sparse.hpp"

namespace dg3d1d {

struct SolverReport {
  int iterations = 0;
  /// ||b - A x|| / ||b|| recomputed from the returned x.
  double relative_residual = 0.0;
  bool converged = false;
};

struct CgOptions {
  double tol = 1e-10;
  int max_iterations = 20000;
  bool jacobi = true;
  /// Tolerance on max |A_ij - A_ji| / max |A| for the sampled symmetry check.
  double symmetry_tol = 1e-12;
};

/// Thrown when p^T A p <= 0 is observed.
class NotSpdError : public SolverError {
 public:
  using SolverError::SolverError;
};

class NonsymmetricError : public SolverError {
 public:
  using SolverError::SolverError;
};

class NonConvergenceError : public SolverError {
 public:
  NonConvergenceError(const std::string& what, SolverReport report)
      : SolverError(what), report_(report) {}
  [[nodiscard]] const SolverReport& report() const { return report_; }

 private:
  SolverReport report_;
};

struct CgResult {
  std::vector<double> x;
  SolverReport report;
};

/// Jacobi-preconditioned conjugate gradients for symmetric positive definite A.
/// `x0` is the initial guess (zero when empty).
CgResult cg_solve(const SparseMatrix& a, std::span<const double> b, const CgOptions& options = {},
                  std::span<const double> x0 = {});

}  // namespace dg3d1d
