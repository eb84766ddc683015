#pragma once

#include <string>
#include <vector>

#include "dg3d1d/system.hpp"

namespace dg3d1d {

/// Single vessel along the z-axis of (-1/2, 1/2)^3 with
/// u^ = sin(pi z) + 2 and u = c (1 - R ln(r/R)) u^ outside the vessel,
/// c u^ inside, c = xi / (xi + 1).
struct Mms3d1d {
  double radius = 0.05;
  double xi = 1.0;

  [[nodiscard]] double c() const { return xi / (xi + 1.0); }
  [[nodiscard]] double u_hat(double z) const;
  [[nodiscard]] double du_hat(double z) const;
  [[nodiscard]] double u(const Vec3& p) const;
  [[nodiscard]] Vec3 grad_u(const Vec3& p) const;
  /// -d^2u/dz^2; the lateral Laplacian is carried by the coupling term.
  [[nodiscard]] double f(const Vec3& p) const;
  /// -u^'' + (P / A) xi (u^ - u_bar) with u_bar = c u^.
  [[nodiscard]] double f_hat(double z) const;

  [[nodiscard]] VesselGraph graph() const;
  [[nodiscard]] Vec3 lo() const { return Vec3::Constant(-0.5); }
  [[nodiscard]] Vec3 hi() const { return Vec3::Constant(0.5); }
  /// Source, boundary data and 1D source in the form used by the system.
  [[nodiscard]] ProblemData data() const;
};

/// Eight-vertex planar tree with three bifurcations, A = 1, xi = 0, and a
/// solution that is oscillatory on the root edge and linear elsewhere.
struct MmsNetwork {
  [[nodiscard]] VesselGraph graph() const;
  [[nodiscard]] double u_hat(Index edge, double s) const;
  /// Derivative along the edge direction.
  [[nodiscard]] double du_hat(Index edge, double s) const;
  [[nodiscard]] double f_hat(Index edge, double s) const;
  [[nodiscard]] std::vector<Index> dirichlet_vertices() const { return {0, 4, 5, 6, 7}; }
  [[nodiscard]] ProblemData data() const;
  /// Exact value at a graph vertex.
  [[nodiscard]] double vertex_value(Index v) const;
};

/// Affine-in-space pair u = e^-t U(x), u^ = e^-t U(0,0,z) with grad U
/// normal to the vessel, so P1 spaces and the lateral average are exact and
/// only the time discretization contributes to the error.
struct MmsTime {
  double a = 1.5;
  double bx = 0.4;
  double by = -0.3;

  [[nodiscard]] double u(double t, const Vec3& p) const;
  [[nodiscard]] double u_hat(double t) const;
  [[nodiscard]] ProblemData data(double t) const;
};

struct ErrorNorms {
  double l2_3d = 0.0;
  double h1_3d = 0.0;        ///< full broken H1 norm
  double h1_semi_3d = 0.0;
  double l2_1d = 0.0;
  double h1_1d = 0.0;        ///< full broken H1 norm, unweighted
  double coupling = 0.0;     ///< ||(u_bar - u^) error||_{L2_P} weighted by xi
  double dg = 0.0;           ///< coupled DG norm of the error
};

struct ExactPair {
  std::function<double(const Vec3&)> u;
  std::function<Vec3(const Vec3&)> grad_u;
  std::function<double(Index, double)> u_hat;
  std::function<double(Index, double)> du_hat;
};

/// Errors of a coupled solution. 3D and 1D volume integrals use the
/// elevated rules; the coupling term uses the average operator's samples.
ErrorNorms error_norms(const CoupledSystem& system, std::span<const double> x,
                       const ExactPair& exact);

/// Graph DG norm of the error, including the multiplier mismatch at
/// hybridized vertices and the Dirichlet vertex penalty.
double dg_norm_network(const CoupledSystem& system, std::span<const double> x,
                       const std::function<double(Index, double)>& u_hat,
                       const std::function<double(Index, double)>& du_hat);

/// max over bifurcations of |sum_e d_s u^_e(v) n_e(v)|.
double flux_residual(const DgSpace1& space, std::span<const double> u1);

/// Largest flux-plus-penalty balance at the multiplier vertices; see
/// conservation_residual.
double max_conservation_defect(const CoupledSystem& system, std::span<const double> x);

struct RateRow {
  std::string level;
  double h = 0.0;
  std::vector<double> errors;
  std::vector<double> rates;  ///< NaN on the first row
};

/// Errors per refinement level with EOC log(e_prev/e)/log(h_prev/h).
class RateTable {
 public:
  explicit RateTable(std::vector<std::string> names) : names_(std::move(names)) {}

  /// Throws InvalidArgument unless h decreases strictly and the error count
  /// matches the column names.
  void add(std::string level, double h, std::vector<double> errors);

  [[nodiscard]] const std::vector<std::string>& names() const { return names_; }
  [[nodiscard]] const std::vector<RateRow>& rows() const { return rows_; }
  [[nodiscard]] std::size_t column(const std::string& name) const;

  /// CSV with columns level,h,<name>,<name>_rate,...
  [[nodiscard]] std::string to_csv() const;

 private:
  std::vector<std::string> names_;
  std::vector<RateRow> rows_;
};

double eoc(double e_prev, double e, double h_prev, double h);

}  // namespace dg3d1d
