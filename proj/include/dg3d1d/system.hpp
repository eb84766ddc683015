#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "dg3d1d/assembly1d.hpp"
#include "dg3d1d/assembly3d.hpp"
#include "dg3d1d/cg.hpp"
#include "dg3d1d/coupling.hpp"

namespace dg3d1d {

struct SystemOptions {
  IpdgParams ipdg3;
  Ipdg1Params ipdg1;
  int degree_1d = 1;
  int circle_points = 16;
  AverageSampling average_sampling = AverageSampling::gauss;
  CgOptions cg;
};

/// Right-hand side data at one time level. Empty functions mean zero.
struct ProblemData {
  ScalarField3 f;        ///< 3D source
  ScalarField3 g;        ///< Dirichlet data on the box boundary
  ScalarField1 f_hat;    ///< 1D source
  /// Dirichlet values at the system's Dirichlet vertices, in the same order.
  std::vector<double> vertex_values;
};

/// Coefficient blocks of a global vector ordered [3D | 1D | multipliers].
struct SplitState {
  std::span<const double> u3;
  std::span<const double> u1;
  std::span<const double> multipliers;
};

struct Solution {
  std::vector<double> x;
  SolverReport report;
};

/// Coupled 3D-1D operator. Without a mesh the 3D block is empty and the
/// system reduces to the graph problem. Holds references between its parts,
/// so it is neither copyable nor movable.
class CoupledSystem {
 public:
  CoupledSystem(std::optional<Mesh3> mesh, VesselGraph graph, std::vector<EdgeMesh> meshes1,
                SystemOptions options, std::vector<Index> dirichlet_vertices = {});
  CoupledSystem(const CoupledSystem&) = delete;
  CoupledSystem& operator=(const CoupledSystem&) = delete;

  [[nodiscard]] bool has_3d() const { return space3_ != nullptr; }
  [[nodiscard]] Index n3() const { return has_3d() ? space3_->num_dofs() : 0; }
  [[nodiscard]] Index n1() const { return space1_->num_dofs(); }
  [[nodiscard]] Index nm() const { return multipliers_->size(); }
  [[nodiscard]] Index size() const { return n3() + n1() + nm(); }

  [[nodiscard]] const Mesh3& mesh() const { return *mesh_; }
  [[nodiscard]] const DgSpace3& space3() const { return *space3_; }
  [[nodiscard]] const VesselGraph& graph() const { return *graph_; }
  [[nodiscard]] const DgSpace1& space1() const { return *space1_; }
  [[nodiscard]] const MultiplierSpace& multipliers() const { return *multipliers_; }
  [[nodiscard]] const AverageOperator& average() const { return avg_; }
  [[nodiscard]] const QuadRules& rules() const { return rules_; }
  [[nodiscard]] const SystemOptions& options() const { return options_; }
  [[nodiscard]] const std::vector<Index>& dirichlet_vertices() const { return dirichlet_vertices_; }

  /// a_h + a_lambda + b_v + coupling + vertex Dirichlet terms.
  [[nodiscard]] const SparseMatrix& matrix() const { return matrix_; }
  /// blockdiag(M_3D, A-weighted M_1D, 0).
  [[nodiscard]] const SparseMatrix& mass() const { return mass_; }

  [[nodiscard]] std::vector<double> rhs(const ProblemData& data) const;
  /// Loads only (f, A f^), without boundary terms.
  [[nodiscard]] std::vector<double> load(const ProblemData& data) const;
  /// Boundary terms only.
  [[nodiscard]] std::vector<double> boundary_rhs(const ProblemData& data) const;

  /// CG solve of matrix() x = rhs(data). Throws SolverError subclasses.
  [[nodiscard]] Solution solve(const ProblemData& data) const;

  [[nodiscard]] SplitState split(std::span<const double> x) const;

 private:
  std::unique_ptr<Mesh3> mesh_;
  std::unique_ptr<PointLocator> locator_;
  std::unique_ptr<DgSpace3> space3_;
  std::unique_ptr<VesselGraph> graph_;
  std::unique_ptr<DgSpace1> space1_;
  std::unique_ptr<MultiplierSpace> multipliers_;
  SystemOptions options_;
  std::vector<Index> dirichlet_vertices_;
  QuadRules rules_;
  AverageOperator avg_;
  SparseMatrix matrix_;
  SparseMatrix mass_;
};

}  // namespace dg3d1d
