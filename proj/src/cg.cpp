#include "dg3d1d/cg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dg3d1d {

namespace {

// Checks A_ij == A_ji on every entry of a strided subset of rows.
void check_symmetry_sample(const SparseMatrix& a, double tol) {
  const double scale = a.max_abs();
  if (scale == 0.0) return;
  const Index stride = std::max<Index>(1, a.rows() / 4096);
  const auto off = a.row_offsets();
  const auto col = a.col_indices();
  const auto val = a.values();
  for (Index i = 0; i < a.rows(); i += stride) {
    for (Index k = off[i]; k < off[i + 1]; ++k) {
      const double diff = std::abs(val[k] - a.coeff(col[k], i));
      if (diff > tol * scale) {
        std::ostringstream msg;
        msg << "nonsymmetric variant: use external solver (|A(" << i << "," << col[k]
            << ") - A(" << col[k] << "," << i << ")| = " << diff << ")";
        throw NonsymmetricError(msg.str());
      }
    }
  }
}

double true_relative_residual(const SparseMatrix& a, std::span<const double> b,
                              std::span<const double> x, double bnorm,
                              std::vector<double>& r) {
  spmv(a, x, r);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
  const double rn = norm2(r);
  return bnorm > 0.0 ? rn / bnorm : rn;
}

}  // namespace

CgResult cg_solve(const SparseMatrix& a, std::span<const double> b, const CgOptions& options,
                  std::span<const double> x0) {
  if (a.rows() != a.cols()) throw InvalidArgument("cg_solve: matrix is not square");
  const auto n = static_cast<std::size_t>(a.rows());
  if (b.size() != n) throw InvalidArgument("cg_solve: right-hand side has wrong length");
  if (!x0.empty() && x0.size() != n) throw InvalidArgument("cg_solve: initial guess has wrong length");
  for (double v : b)
    if (!std::isfinite(v)) throw InvalidArgument("cg_solve: right-hand side is not finite");
  check_symmetry_sample(a, options.symmetry_tol);

  std::vector<double> inv_diag(n, 1.0);
  if (options.jacobi) {
    const auto d = a.diagonal();
    for (std::size_t i = 0; i < n; ++i) {
      if (d[i] <= 0.0) {
        std::ostringstream msg;
        msg << "matrix is not SPD: diagonal entry " << i << " is " << d[i];
        throw NotSpdError(msg.str());
      }
      inv_diag[i] = 1.0 / d[i];
    }
  }

  CgResult result;
  result.x.assign(n, 0.0);
  if (!x0.empty()) std::copy(x0.begin(), x0.end(), result.x.begin());
  auto& x = result.x;
  auto& report = result.report;

  const double bnorm = norm2(b);
  std::vector<double> r(n), z(n), p(n), ap(n);
  double rel = true_relative_residual(a, b, x, bnorm, r);
  if (rel <= options.tol) {
    report = {0, rel, true};
    return result;
  }

  auto restart = [&] {
    for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
    p = z;
    return dot(r, z);
  };
  double rz = restart();
  int it = 0;
  while (it < options.max_iterations) {
    spmv(a, p, ap);
    const double pap = dot(p, ap);
    if (!(pap > 0.0)) {
      std::ostringstream msg;
      msg << "matrix is not SPD: p^T A p = " << pap << " at iteration " << it;
      throw NotSpdError(msg.str());
    }
    const double alpha = rz / pap;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * ap[i];
    }
    ++it;
    const double recurrence = bnorm > 0.0 ? norm2(r) / bnorm : norm2(r);
    if (recurrence <= options.tol) {
      // The recurrence residual drifts from the true one; only stop on the latter.
      rel = true_relative_residual(a, b, x, bnorm, r);
      if (rel <= options.tol) {
        report = {it, rel, true};
        return result;
      }
      rz = restart();
      continue;
    }
    for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
    const double rz_new = dot(r, z);
    const double beta = rz_new / rz;
    rz = rz_new;
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  rel = true_relative_residual(a, b, x, bnorm, r);
  report = {it, rel, rel <= options.tol};
  if (report.converged) return result;
  std::ostringstream msg;
  msg << "CG did not converge in " << it << " iterations (relative residual " << rel << ")";
  throw NonConvergenceError(msg.str(), report);
}

}  // namespace dg3d1d
