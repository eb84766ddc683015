#include "dg3d1d/spaces.hpp"

#include "dg3d1d/errors.hpp"

namespace dg3d1d {

std::array<Vec3, 4> DgSpace3::gradients(Index cell) const {
  const Mat3& inv = mesh_->inverse_jacobians[cell];
  std::array<Vec3, 4> g;
  g[1] = inv.row(0).transpose();
  g[2] = inv.row(1).transpose();
  g[3] = inv.row(2).transpose();
  g[0] = -(g[1] + g[2] + g[3]);
  return g;
}

Basis3 DgSpace3::eval_basis(Index cell, const Vec3& p) const {
  return {mesh_->barycentric(cell, p), gradients(cell)};
}

double DgSpace3::eval(std::span<const double> coeffs, Index cell, const Vec3& p) const {
  const auto l = mesh_->barycentric(cell, p);
  double v = 0.0;
  for (int a = 0; a < 4; ++a) v += coeffs[dof(cell, a)] * l[a];
  return v;
}

Vec3 DgSpace3::eval_gradient(std::span<const double> coeffs, Index cell) const {
  const auto g = gradients(cell);
  Vec3 v = Vec3::Zero();
  for (int a = 0; a < 4; ++a) v += coeffs[dof(cell, a)] * g[a];
  return v;
}

Vec3 DgSpace3::map(Index cell, const std::array<double, 3>& ref) const {
  const auto& c = mesh_->cells[cell];
  const auto& v = mesh_->vertices;
  return v[c[0]] + ref[0] * (v[c[1]] - v[c[0]]) + ref[1] * (v[c[2]] - v[c[0]]) +
         ref[2] * (v[c[3]] - v[c[0]]);
}

std::vector<double> lagrange_values(int degree, double xi) {
  switch (degree) {
    case 1: return {1.0 - xi, xi};
    case 2: return {2.0 * (xi - 0.5) * (xi - 1.0), -4.0 * xi * (xi - 1.0), 2.0 * xi * (xi - 0.5)};
    default: throw InvalidArgument("1D degree must be 1 or 2");
  }
}

std::vector<double> lagrange_derivatives(int degree, double xi) {
  switch (degree) {
    case 1: return {-1.0, 1.0};
    case 2: return {4.0 * xi - 3.0, 4.0 - 8.0 * xi, 4.0 * xi - 1.0};
    default: throw InvalidArgument("1D degree must be 1 or 2");
  }
}

DgSpace1::DgSpace1(const VesselGraph& graph, std::vector<EdgeMesh> meshes, int degree)
    : graph_(&graph), meshes_(std::move(meshes)), degree_(degree) {
  if (degree < 1 || degree > 2) throw InvalidArgument("1D degree must be 1 or 2");
  if (static_cast<Index>(meshes_.size()) != graph.num_edges())
    throw InvalidArgument("need exactly one mesh per edge");
  offsets_.push_back(0);
  for (Index e = 0; e < graph.num_edges(); ++e) {
    if (meshes_[e].edge != e) throw InvalidArgument("edge meshes must be in edge order");
    offsets_.push_back(offsets_.back() + static_cast<Index>(meshes_[e].cells) * dofs_per_cell());
  }
}

Index DgSpace1::num_cells() const {
  Index n = 0;
  for (const auto& m : meshes_) n += m.cells;
  return n;
}

Vec3 DgSpace1::point(Index edge, double s) const {
  return graph_->vertices()[graph_->edges()[edge].v_in] + s * graph_->tangent(edge);
}

double DgSpace1::eval(std::span<const double> coeffs, Index edge, int cell, double xi) const {
  const auto phi = lagrange_values(degree_, xi);
  double v = 0.0;
  for (int a = 0; a <= degree_; ++a) v += coeffs[dof(edge, cell, a)] * phi[a];
  return v;
}

double DgSpace1::eval_derivative(std::span<const double> coeffs, Index edge, int cell,
                                 double xi) const {
  const auto dphi = lagrange_derivatives(degree_, xi);
  double v = 0.0;
  for (int a = 0; a <= degree_; ++a) v += coeffs[dof(edge, cell, a)] * dphi[a];
  return v / meshes_[edge].h();
}

DgSpace1::EndPoint DgSpace1::end_at(Index edge, Index vertex) const {
  const int o = graph_->orientation(edge, vertex);
  if (o == 1) return {0, 0.0};
  if (o == -1) return {meshes_[edge].cells - 1, 1.0};
  throw InvalidArgument("vertex " + std::to_string(vertex) + " is not an end of edge " +
                        std::to_string(edge));
}

}  // namespace dg3d1d
