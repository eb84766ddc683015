#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dg3d1d/quadrature.hpp"
#include "dg3d1d/spaces.hpp"
#include "dg3d1d/sparse.hpp"

namespace dg3d1d {

/// Source on the graph as a function of (edge, arclength).
using ScalarField1 = std::function<double(Index, double)>;

struct Ipdg1Params {
  int epsilon = -1;
  double sigma_lambda = 30.0;
  double sigma_v = 10.0;

  void validate() const;
  /// Warning text when sigma_v < 4 max A_e, the heuristic floor for P1/P2.
  [[nodiscard]] std::optional<std::string> sigma_v_warning(const VesselGraph& graph) const;
};

/// One unknown per bifurcation or pass-through vertex, ordered by vertex id.
class MultiplierSpace {
 public:
  explicit MultiplierSpace(const VesselGraph& graph);

  [[nodiscard]] Index size() const { return static_cast<Index>(vertices_.size()); }
  [[nodiscard]] const std::vector<Index>& vertices() const { return vertices_; }
  /// Multiplier index of vertex v, or -1 when v carries none.
  [[nodiscard]] Index index_of(Index v) const { return index_[v]; }

 private:
  std::vector<Index> vertices_;
  std::vector<Index> index_;
};

/// Per-edge interior penalty form. Only nodes strictly inside an edge carry
/// flux and jump terms; edge ends are left to b_v or the vertex Dirichlet
/// terms. Jumps are [v] = v(s-) - v(s+).
SparseMatrix assemble_a_lambda(const DgSpace1& space, const Ipdg1Params& params,
                               const IntervalRule& rule);

/// Hybrid vertex form over [1D DOFs | multipliers], square of size
/// space.num_dofs() + multipliers.size(). n_e(v) = +1 at the start of an
/// edge and -1 at its end.
SparseMatrix assemble_b_v(const DgSpace1& space, const MultiplierSpace& multipliers,
                          const Ipdg1Params& params);

/// A-weighted mass matrix and load.
SparseMatrix assemble_mass_1d(const DgSpace1& space, const IntervalRule& rule);
std::vector<double> assemble_load_1d(const DgSpace1& space, const ScalarField1& f,
                                     const IntervalRule& rule);

/// Weak Dirichlet data at degree-1 vertices: the b_v terms with the
/// multiplier replaced by the datum.
struct VertexDirichlet {
  std::vector<Index> vertices;
  std::vector<double> values;
};

SparseMatrix dirichlet_vertex_matrix(const DgSpace1& space, const Ipdg1Params& params,
                                     const std::vector<Index>& vertices);
std::vector<double> dirichlet_vertex_rhs(const DgSpace1& space, const Ipdg1Params& params,
                                         const VertexDirichlet& data);

/// Flux-plus-penalty balance at each multiplier vertex:
/// sum_e A_e u_e'(v) n_e(v) + sum_e sigma_v / h_e (u_e(v) - u~_v).
std::vector<double> conservation_residual(const DgSpace1& space,
                                          const MultiplierSpace& multipliers,
                                          const Ipdg1Params& params, std::span<const double> u1,
                                          std::span<const double> multiplier_values);

/// Cell-wise L2 projection onto the broken P_k space.
std::vector<double> l2_project_1d(const DgSpace1& space, const ScalarField1& u,
                                  const IntervalRule& rule);

}  // namespace dg3d1d
