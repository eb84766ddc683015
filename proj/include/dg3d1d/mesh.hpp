#pragma once

#include <Eigen/Dense>

#include <array>
#include <vector>

#include "dg3d1d/sparse.hpp"

namespace dg3d1d {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Face shared by two cells. `normal` is the unit normal pointing from
/// `left` (the lower cell index) to `right`.
struct InteriorFace {
  std::array<Index, 3> vertices;
  Index left;
  Index right;
  Vec3 normal;
  double area;
};

/// Face on the box boundary; `normal` points out of `owner`.
struct BoundaryFace {
  std::array<Index, 3> vertices;
  Index owner;
  Vec3 normal;
  double area;
};

/// Conforming tetrahedral mesh. Cells are stored with positive orientation.
struct Mesh3 {
  std::vector<Vec3> vertices;
  std::vector<std::array<Index, 4>> cells;
  std::vector<InteriorFace> interior_faces;
  std::vector<BoundaryFace> boundary_faces;
  std::vector<double> diameters;
  std::vector<double> volumes;
  /// Inverse of [v1-v0 | v2-v0 | v3-v0]; rows are the gradients of the
  /// barycentric coordinates 1..3.
  std::vector<Mat3> inverse_jacobians;
  Vec3 lo = Vec3::Zero();
  Vec3 hi = Vec3::Zero();

  [[nodiscard]] Index num_cells() const { return static_cast<Index>(cells.size()); }
  [[nodiscard]] Index num_vertices() const { return static_cast<Index>(vertices.size()); }
  [[nodiscard]] double max_diameter() const;
  [[nodiscard]] Vec3 centroid(Index cell) const;
  /// Barycentric coordinates of p with respect to `cell` (may be negative).
  [[nodiscard]] std::array<double, 4> barycentric(Index cell, const Vec3& p) const;
};

/// Cells, orientation, volumes and diameters from raw vertex/cell lists, then
/// face connectivity. Used for hand-built meshes in tests.
Mesh3 make_mesh(std::vector<Vec3> vertices, std::vector<std::array<Index, 4>> cells);

/// n^3 sub-cubes of [lo, hi], each split into 6 tetrahedra around the main
/// diagonal (Kuhn split). Faces are populated.
Mesh3 build_box_mesh(int n, const Vec3& lo, const Vec3& hi);

/// Classifies every cell face as interior or boundary. Throws MeshError on a
/// face shared by more than two cells.
void build_face_connectivity(Mesh3& mesh);

struct PointLocation {
  Index cell;
  std::array<double, 4> barycentric;
};

/// Uniform bins over the bounding box; each bin lists the cells whose
/// bounding boxes overlap it, in increasing cell order.
class PointLocator {
 public:
  explicit PointLocator(const Mesh3& mesh);

  /// Cell containing p. Points on shared faces, edges or vertices resolve to
  /// the lowest cell index among the containing cells. Throws GeometryError
  /// when p lies outside the box.
  [[nodiscard]] PointLocation locate(const Vec3& p) const;

  /// Exhaustive scan over all cells with the same tie-break rule.
  [[nodiscard]] PointLocation locate_brute_force(const Vec3& p) const;

 private:
  [[nodiscard]] std::array<int, 3> bin_of(const Vec3& p) const;

  const Mesh3* mesh_;
  std::array<int, 3> bins_{};
  Vec3 bin_size_;
  double tol_;
  std::vector<std::vector<Index>> buckets_;
};

PointLocation locate_point(const Mesh3& mesh, const Vec3& p, const PointLocator& locator);

}  // namespace dg3d1d
