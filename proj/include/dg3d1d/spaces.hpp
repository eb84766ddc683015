#pragma once

#include <array>
#include <span>
#include <vector>

#include "dg3d1d/mesh.hpp"
#include "dg3d1d/network.hpp"

namespace dg3d1d {

/// Values and physical gradients of the four P1 basis functions of a cell.
struct Basis3 {
  std::array<double, 4> values;
  std::array<Vec3, 4> gradients;
};

/// Broken P1 space on a tetrahedral mesh. Cell c owns DOFs 4c .. 4c+3, the
/// Lagrange basis at its vertices in local order.
class DgSpace3 {
 public:
  static constexpr int kDofsPerCell = 4;

  explicit DgSpace3(const Mesh3& mesh) : mesh_(&mesh) {}

  [[nodiscard]] const Mesh3& mesh() const { return *mesh_; }
  [[nodiscard]] Index num_dofs() const { return kDofsPerCell * mesh_->num_cells(); }
  [[nodiscard]] Index dof(Index cell, int local) const { return kDofsPerCell * cell + local; }

  [[nodiscard]] Basis3 eval_basis(Index cell, const Vec3& p) const;
  [[nodiscard]] std::array<Vec3, 4> gradients(Index cell) const;
  [[nodiscard]] double eval(std::span<const double> coeffs, Index cell, const Vec3& p) const;
  [[nodiscard]] Vec3 eval_gradient(std::span<const double> coeffs, Index cell) const;

  /// Nodal interpolant: each cell samples g at its own vertices.
  template <class F>
  [[nodiscard]] std::vector<double> interpolate(F&& g) const {
    std::vector<double> x(static_cast<std::size_t>(num_dofs()));
    for (Index c = 0; c < mesh_->num_cells(); ++c)
      for (int a = 0; a < 4; ++a) x[dof(c, a)] = g(mesh_->vertices[mesh_->cells[c][a]]);
    return x;
  }

  /// Physical point of a reference-tet point in `cell`.
  [[nodiscard]] Vec3 map(Index cell, const std::array<double, 3>& ref) const;

 private:
  const Mesh3* mesh_;
};

/// Lagrange basis of degree k on [0, 1] with equispaced nodes.
std::vector<double> lagrange_values(int degree, double xi);
std::vector<double> lagrange_derivatives(int degree, double xi);

/// Broken P_k space over all edge meshes; edge e, cell i owns the
/// contiguous block offset(e) + i*(k+1) .. + k.
class DgSpace1 {
 public:
  DgSpace1(const VesselGraph& graph, std::vector<EdgeMesh> meshes, int degree);

  [[nodiscard]] const VesselGraph& graph() const { return *graph_; }
  [[nodiscard]] const std::vector<EdgeMesh>& meshes() const { return meshes_; }
  [[nodiscard]] int degree() const { return degree_; }
  [[nodiscard]] int dofs_per_cell() const { return degree_ + 1; }
  [[nodiscard]] Index num_dofs() const { return offsets_.back(); }
  [[nodiscard]] Index offset(Index edge) const { return offsets_[edge]; }
  [[nodiscard]] Index dof(Index edge, int cell, int local) const {
    return offsets_[edge] + static_cast<Index>(cell) * dofs_per_cell() + local;
  }
  [[nodiscard]] Index num_cells() const;

  /// Physical point at arclength s on edge e.
  [[nodiscard]] Vec3 point(Index edge, double s) const;

  /// Value at arclength s using cell `cell` (one-sided at nodes).
  [[nodiscard]] double eval(std::span<const double> coeffs, Index edge, int cell, double xi) const;
  [[nodiscard]] double eval_derivative(std::span<const double> coeffs, Index edge, int cell,
                                       double xi) const;

  /// Interpolant of g(edge, s) at the Lagrange nodes of every cell.
  template <class F>
  [[nodiscard]] std::vector<double> interpolate(F&& g) const {
    std::vector<double> x(static_cast<std::size_t>(num_dofs()));
    for (const auto& m : meshes_)
      for (int i = 0; i < m.cells; ++i)
        for (int a = 0; a <= degree_; ++a)
          x[dof(m.edge, i, a)] = g(m.edge, (i + static_cast<double>(a) / degree_) * m.h());
    return x;
  }

  /// End cell and local reference coordinate of edge e at vertex v.
  struct EndPoint {
    int cell;
    double xi;
  };
  [[nodiscard]] EndPoint end_at(Index edge, Index vertex) const;

 private:
  const VesselGraph* graph_;
  std::vector<EdgeMesh> meshes_;
  int degree_;
  std::vector<Index> offsets_;
};

}  // namespace dg3d1d
