#include "dg3d1d/network.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "dg3d1d/errors.hpp"

namespace dg3d1d {

double VesselEdge::area() const {
  return area_override ? *area_override : std::numbers::pi * radius * radius;
}

double VesselEdge::perimeter() const { return 2.0 * std::numbers::pi * radius; }

VesselGraph::VesselGraph(std::vector<Vec3> vertices, std::vector<VesselEdge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)), incident_(vertices_.size()) {
  if (vertices_.empty()) throw InvalidArgument("vessel graph has no vertices");
  if (edges_.empty()) throw InvalidArgument("vessel graph has no edges");
  const auto nv = num_vertices();
  for (Index e = 0; e < num_edges(); ++e) {
    const auto& ed = edges_[e];
    const std::string where = "edge " + std::to_string(e);
    if (ed.v_in < 0 || ed.v_in >= nv || ed.v_out < 0 || ed.v_out >= nv)
      throw InvalidArgument(where + " references a missing vertex");
    if (ed.v_in == ed.v_out) throw InvalidArgument(where + " is a self-loop");
    if (!(ed.radius > 0.0)) throw InvalidArgument(where + " has non-positive radius");
    if (!(ed.xi >= 0.0)) throw InvalidArgument(where + " has negative permeability");
    if (ed.cells < 0) throw InvalidArgument(where + " has a negative cell count");
    if (ed.area_override && !(*ed.area_override > 0.0))
      throw InvalidArgument(where + " has non-positive area");
    if (!(length(e) > 0.0)) throw InvalidArgument(where + " has zero length");
    incident_[ed.v_in].push_back(e);
    incident_[ed.v_out].push_back(e);
  }

  // Connected components by union-find over edges.
  std::vector<Index> parent(static_cast<std::size_t>(nv));
  for (Index v = 0; v < nv; ++v) parent[v] = v;
  auto find = [&](Index v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& ed : edges_) parent[find(ed.v_in)] = find(ed.v_out);
  std::vector<std::vector<Index>> groups(static_cast<std::size_t>(nv));
  for (Index v = 0; v < nv; ++v) groups[find(v)].push_back(v);
  std::erase_if(groups, [](const auto& g) { return g.empty(); });
  if (groups.size() > 1) {
    std::ostringstream msg;
    msg << "vessel graph is disconnected: " << groups.size() << " components";
    for (const auto& g : groups) {
      msg << " {";
      for (std::size_t i = 0; i < g.size(); ++i) msg << (i ? "," : "") << g[i];
      msg << "}";
    }
    throw InvalidArgument(msg.str());
  }
}

double VesselGraph::length(Index e) const {
  return (vertices_[edges_[e].v_out] - vertices_[edges_[e].v_in]).norm();
}

Vec3 VesselGraph::tangent(Index e) const {
  return (vertices_[edges_[e].v_out] - vertices_[edges_[e].v_in]) / length(e);
}

int VesselGraph::orientation(Index e, Index v) const {
  if (edges_[e].v_in == v) return 1;
  if (edges_[e].v_out == v) return -1;
  return 0;
}

VertexClass VesselGraph::vertex_class(Index v) const {
  const auto deg = incident_[v].size();
  if (deg == 1) return VertexClass::boundary;
  if (deg == 2) return VertexClass::pass_through;
  return VertexClass::bifurcation;
}

std::vector<std::string> VesselGraph::check_section_bounds(double a0, double a1) const {
  std::vector<std::string> warnings;
  for (Index e = 0; e < num_edges(); ++e) {
    const double s = edges_[e].area() + edges_[e].perimeter();
    if (s < a0 || s > a1) {
      std::ostringstream msg;
      msg << "edge " << e << ": A + P = " << s << " outside [" << a0 << ", " << a1 << "]";
      warnings.push_back(msg.str());
    }
  }
  return warnings;
}

VertexPartition classify_vertices(const VesselGraph& graph) {
  VertexPartition p;
  for (Index v = 0; v < graph.num_vertices(); ++v) {
    switch (graph.vertex_class(v)) {
      case VertexClass::boundary: p.boundary.push_back(v); break;
      case VertexClass::bifurcation: p.bifurcations.push_back(v); break;
      case VertexClass::pass_through: p.pass_through.push_back(v); break;
    }
  }
  return p;
}

std::vector<EdgeMesh> build_edge_meshes(const VesselGraph& graph, std::optional<double> target_h) {
  if (target_h && !(*target_h > 0.0)) throw InvalidArgument("target 1D mesh size must be positive");
  std::vector<EdgeMesh> meshes;
  meshes.reserve(static_cast<std::size_t>(graph.num_edges()));
  for (Index e = 0; e < graph.num_edges(); ++e) {
    const double len = graph.length(e);
    int cells = graph.edges()[e].cells;
    if (target_h) {
      // Guard against L/h landing a rounding error above an integer.
      cells = static_cast<int>(std::ceil(len / *target_h * (1.0 - 1e-12)));
    } else if (cells == 0) {
      throw InvalidArgument("edge " + std::to_string(e) +
                            " has no cell count and no target mesh size was given");
    }
    meshes.push_back({e, std::max(cells, 1), len});
  }
  return meshes;
}

EdgeFrame make_frame(const Vec3& tangent) {
  const Vec3 t = tangent.normalized();
  // Seed with the coordinate axis least aligned with t.
  Eigen::Index axis = 0;
  t.cwiseAbs().minCoeff(&axis);
  const Vec3 seed = Vec3::Unit(axis);
  const Vec3 e1 = (seed - seed.dot(t) * t).normalized();
  const Vec3 e2 = t.cross(e1);
  return {t, e1, e2};
}

std::vector<CirclePoint> circle_points(const EdgeFrame& frame, const Vec3& center, double radius,
                                       int m) {
  if (m < 4 || m % 2 != 0) throw InvalidArgument("circle quadrature needs an even M >= 4");
  std::vector<CirclePoint> pts;
  pts.reserve(static_cast<std::size_t>(m));
  const double w = 2.0 * std::numbers::pi * radius / m;
  for (int j = 0; j < m; ++j) {
    const double theta = 2.0 * std::numbers::pi * (j + 0.5) / m;
    pts.push_back({center + radius * (std::cos(theta) * frame.e1 + std::sin(theta) * frame.e2), w});
  }
  return pts;
}

}  // namespace dg3d1d
