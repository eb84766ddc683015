#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dg3d1d/mesh.hpp"

namespace dg3d1d {

struct VesselEdge {
  Index v_in;
  Index v_out;
  double radius;
  double xi = 1.0;          ///< membrane permeability
  int cells = 0;            ///< 0: derive from a target mesh size
  /// Cross-section area override; pi R^2 when unset. Pure 1D studies use
  /// A = 1 independent of the radius.
  std::optional<double> area_override;

  [[nodiscard]] double area() const;
  [[nodiscard]] double perimeter() const;
};

enum class VertexClass { boundary, bifurcation, pass_through };

/// Directed vessel graph with straight edges of constant cross-section.
class VesselGraph {
 public:
  VesselGraph(std::vector<Vec3> vertices, std::vector<VesselEdge> edges);

  [[nodiscard]] const std::vector<Vec3>& vertices() const { return vertices_; }
  [[nodiscard]] const std::vector<VesselEdge>& edges() const { return edges_; }
  [[nodiscard]] Index num_vertices() const { return static_cast<Index>(vertices_.size()); }
  [[nodiscard]] Index num_edges() const { return static_cast<Index>(edges_.size()); }

  [[nodiscard]] double length(Index e) const;
  [[nodiscard]] Vec3 tangent(Index e) const;
  /// +1 at v_in, -1 at v_out, 0 elsewhere.
  [[nodiscard]] int orientation(Index e, Index v) const;
  /// Edges incident to v, in increasing edge order.
  [[nodiscard]] const std::vector<Index>& incident(Index v) const { return incident_[v]; }
  [[nodiscard]] VertexClass vertex_class(Index v) const;

  /// Returns warnings for edges whose A_e + P_e leaves [a0, a1].
  [[nodiscard]] std::vector<std::string> check_section_bounds(double a0, double a1) const;

 private:
  std::vector<Vec3> vertices_;
  std::vector<VesselEdge> edges_;
  std::vector<std::vector<Index>> incident_;
};

struct VertexPartition {
  std::vector<Index> boundary;      ///< degree 1
  std::vector<Index> bifurcations;  ///< degree >= 3
  std::vector<Index> pass_through;  ///< degree 2
};

VertexPartition classify_vertices(const VesselGraph& graph);

/// Uniform partition of one edge, s in [0, L].
struct EdgeMesh {
  Index edge;
  int cells;
  double length;

  [[nodiscard]] double h() const { return length / cells; }
  [[nodiscard]] double node(int i) const { return length * static_cast<double>(i) / cells; }
};

/// One mesh per edge. Edges with `cells > 0` keep their count; the rest get
/// ceil(L / target_h) cells so that h <= target_h.
std::vector<EdgeMesh> build_edge_meshes(const VesselGraph& graph, std::optional<double> target_h);

/// Orthonormal frame {t, e1, e2} of a straight edge.
struct EdgeFrame {
  Vec3 tangent;
  Vec3 e1;
  Vec3 e2;
};

EdgeFrame make_frame(const Vec3& tangent);

struct CirclePoint {
  Vec3 point;
  double weight;  ///< P / M
};

/// M-point trapezoid rule on the circle of radius R around `center` in the
/// plane normal to the frame tangent. Points sit at angles 2*pi*(j + 1/2)/M
/// measured from e1. Requires M >= 4 and even.
std::vector<CirclePoint> circle_points(const EdgeFrame& frame, const Vec3& center, double radius,
                                       int m);

}  // namespace dg3d1d
