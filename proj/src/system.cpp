#include "dg3d1d/system.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "dg3d1d/errors.hpp"

namespace dg3d1d {

CoupledSystem::CoupledSystem(std::optional<Mesh3> mesh, VesselGraph graph,
                             std::vector<EdgeMesh> meshes1, SystemOptions options,
                             std::vector<Index> dirichlet_vertices)
    : options_(options),
      dirichlet_vertices_(std::move(dirichlet_vertices)),
      rules_(quad_rules(options.degree_1d)) {
  options_.ipdg1.validate();
  graph_ = std::make_unique<VesselGraph>(std::move(graph));
  for (const Index v : dirichlet_vertices_) {
    if (v < 0 || v >= graph_->num_vertices())
      throw InvalidArgument("Dirichlet vertex " + std::to_string(v) + " does not exist");
    if (graph_->vertex_class(v) != VertexClass::boundary)
      throw InvalidArgument("Dirichlet vertex " + std::to_string(v) + " is not a degree-1 vertex");
  }
  space1_ = std::make_unique<DgSpace1>(*graph_, std::move(meshes1), options_.degree_1d);
  multipliers_ = std::make_unique<MultiplierSpace>(*graph_);

  const SparseMatrix a1 = assemble_a_lambda(*space1_, options_.ipdg1, rules_.interval);
  const SparseMatrix bv = assemble_b_v(*space1_, *multipliers_, options_.ipdg1);
  const SparseMatrix d1 = dirichlet_vertex_matrix(*space1_, options_.ipdg1, dirichlet_vertices_);
  const SparseMatrix m1 = assemble_mass_1d(*space1_, rules_.interval);

  if (mesh) {
    options_.ipdg3.validate();
    mesh_ = std::make_unique<Mesh3>(std::move(*mesh));
    locator_ = std::make_unique<PointLocator>(*mesh_);
    space3_ = std::make_unique<DgSpace3>(*mesh_);
    avg_ = build_average_operator(*space3_, *locator_, *space1_, rules_.interval,
                                  options_.circle_points, options_.average_sampling);
  }
  const Index o1 = n3();
  const Index n = size();

  std::vector<BlockEntry> blocks{{o1, o1, &a1}, {o1, o1, &bv}, {o1, o1, &d1}};
  std::vector<BlockEntry> mass_blocks{{o1, o1, &m1}};
  SparseMatrix a3, m3;
  CouplingBlocks cb;
  if (has_3d()) {
    a3 = assemble_a_h(*space3_, options_.ipdg3, rules_.triangle);
    m3 = assemble_mass_3d(*space3_, rules_.tet);
    cb = assemble_coupling(avg_, *space3_, *space1_);
    blocks.push_back({0, 0, &a3});
    blocks.push_back({0, 0, &cb.omega_omega});
    blocks.push_back({0, o1, &cb.omega_lambda});
    blocks.push_back({o1, 0, &cb.lambda_omega});
    blocks.push_back({o1, o1, &cb.lambda_lambda});
    mass_blocks.push_back({0, 0, &m3});
  }
  matrix_ = block_compose(n, n, blocks);
  mass_ = block_compose(n, n, mass_blocks);
}

std::vector<double> CoupledSystem::load(const ProblemData& data) const {
  std::vector<double> b(static_cast<std::size_t>(size()), 0.0);
  if (has_3d() && data.f) {
    const auto l3 = assemble_load_3d(*space3_, data.f, rules_.tet_error);
    std::copy(l3.begin(), l3.end(), b.begin());
  }
  if (data.f_hat) {
    const auto l1 = assemble_load_1d(*space1_, data.f_hat, rules_.interval_error);
    std::copy(l1.begin(), l1.end(), b.begin() + n3());
  }
  return b;
}

std::vector<double> CoupledSystem::boundary_rhs(const ProblemData& data) const {
  std::vector<double> b(static_cast<std::size_t>(size()), 0.0);
  if (has_3d() && data.g) {
    const auto d3 = dirichlet_rhs(*space3_, options_.ipdg3, data.g, rules_.triangle);
    std::copy(d3.begin(), d3.end(), b.begin());
  }
  if (!dirichlet_vertices_.empty()) {
    if (data.vertex_values.size() != dirichlet_vertices_.size())
      throw InvalidArgument("expected " + std::to_string(dirichlet_vertices_.size()) +
                            " Dirichlet vertex values, got " +
                            std::to_string(data.vertex_values.size()));
    const auto d1 = dirichlet_vertex_rhs(*space1_, options_.ipdg1,
                                         {dirichlet_vertices_, data.vertex_values});
    std::copy(d1.begin(), d1.end(), b.begin() + n3());
  }
  return b;
}

std::vector<double> CoupledSystem::rhs(const ProblemData& data) const {
  auto b = load(data);
  const auto d = boundary_rhs(data);
  for (std::size_t i = 0; i < b.size(); ++i) b[i] += d[i];
  return b;
}

Solution CoupledSystem::solve(const ProblemData& data) const {
  const auto b = rhs(data);
  auto res = cg_solve(matrix_, b, options_.cg);
  return {std::move(res.x), res.report};
}

SplitState CoupledSystem::split(std::span<const double> x) const {
  if (static_cast<Index>(x.size()) != size())
    throw InvalidArgument("state vector has length " + std::to_string(x.size()) + ", expected " +
                          std::to_string(size()));
  return {x.subspan(0, n3()), x.subspan(n3(), n1()), x.subspan(n3() + n1(), nm())};
}

}  // namespace dg3d1d
