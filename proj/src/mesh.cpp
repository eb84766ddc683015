#include "dg3d1d/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <tuple>

#include "dg3d1d/errors.hpp"

namespace dg3d1d {

namespace {

constexpr double kContainTol = 1e-12;

Mat3 edge_matrix(const Mesh3& m, const std::array<Index, 4>& c) {
  Mat3 j;
  for (int k = 0; k < 3; ++k) j.col(k) = m.vertices[c[k + 1]] - m.vertices[c[0]];
  return j;
}

void compute_cell_geometry(Mesh3& m) {
  const auto nc = m.cells.size();
  m.volumes.resize(nc);
  m.diameters.resize(nc);
  m.inverse_jacobians.resize(nc);
  for (std::size_t k = 0; k < nc; ++k) {
    auto& c = m.cells[k];
    double det = edge_matrix(m, c).determinant();
    if (det < 0.0) {
      std::swap(c[2], c[3]);
      det = -det;
    }
    if (!(det > 0.0)) throw MeshError("cell " + std::to_string(k) + " has zero volume");
    const Mat3 j = edge_matrix(m, c);
    m.volumes[k] = det / 6.0;
    m.inverse_jacobians[k] = j.inverse();
    double diam = 0.0;
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b)
        diam = std::max(diam, (m.vertices[c[a]] - m.vertices[c[b]]).norm());
    m.diameters[k] = diam;
  }
  if (!m.vertices.empty()) {
    m.lo = m.vertices.front();
    m.hi = m.vertices.front();
    for (const auto& v : m.vertices) {
      m.lo = m.lo.cwiseMin(v);
      m.hi = m.hi.cwiseMax(v);
    }
  }
}

}  // namespace

double Mesh3::max_diameter() const {
  return diameters.empty() ? 0.0 : *std::max_element(diameters.begin(), diameters.end());
}

Vec3 Mesh3::centroid(Index cell) const {
  Vec3 c = Vec3::Zero();
  for (Index v : cells[cell]) c += vertices[v];
  return c / 4.0;
}

std::array<double, 4> Mesh3::barycentric(Index cell, const Vec3& p) const {
  const Vec3 l = inverse_jacobians[cell] * (p - vertices[cells[cell][0]]);
  return {1.0 - l.sum(), l[0], l[1], l[2]};
}

Mesh3 make_mesh(std::vector<Vec3> vertices, std::vector<std::array<Index, 4>> cells) {
  Mesh3 m;
  m.vertices = std::move(vertices);
  m.cells = std::move(cells);
  for (const auto& c : m.cells)
    for (Index v : c)
      if (v < 0 || v >= m.num_vertices()) throw MeshError("cell references missing vertex");
  compute_cell_geometry(m);
  build_face_connectivity(m);
  return m;
}

Mesh3 build_box_mesh(int n, const Vec3& lo, const Vec3& hi) {
  if (n < 1) throw InvalidArgument("box mesh needs at least one subdivision per axis");
  if (!(hi.array() > lo.array()).all())
    throw InvalidArgument("box mesh needs hi > lo in every coordinate");
  const Index np = n + 1;
  std::vector<Vec3> verts;
  verts.reserve(static_cast<std::size_t>(np * np * np));
  for (Index k = 0; k < np; ++k)
    for (Index j = 0; j < np; ++j)
      for (Index i = 0; i < np; ++i) {
        const Vec3 t(static_cast<double>(i) / n, static_cast<double>(j) / n,
                     static_cast<double>(k) / n);
        verts.emplace_back(lo + (hi - lo).cwiseProduct(t));
      }
  auto vid = [np](Index i, Index j, Index k) { return i + np * (j + np * k); };

  // Each tetrahedron follows a monotone lattice path from corner (0,0,0) to
  // (1,1,1) of its sub-cube; the axis order is one of the 6 permutations.
  static constexpr std::array<std::array<int, 3>, 6> kPerms{
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  std::vector<std::array<Index, 4>> cells;
  cells.reserve(static_cast<std::size_t>(6 * n * n * n));
  for (Index k = 0; k < n; ++k)
    for (Index j = 0; j < n; ++j)
      for (Index i = 0; i < n; ++i)
        for (const auto& perm : kPerms) {
          std::array<Index, 3> at{i, j, k};
          std::array<Index, 4> tet{};
          tet[0] = vid(at[0], at[1], at[2]);
          for (int s = 0; s < 3; ++s) {
            ++at[perm[s]];
            tet[s + 1] = vid(at[0], at[1], at[2]);
          }
          cells.push_back(tet);
        }
  return make_mesh(std::move(verts), std::move(cells));
}

void build_face_connectivity(Mesh3& mesh) {
  struct Slot {
    std::array<Index, 3> key;
    Index cell;
    int opposite;  // local index of the vertex not on the face
  };
  std::vector<Slot> slots;
  slots.reserve(mesh.cells.size() * 4);
  for (Index c = 0; c < mesh.num_cells(); ++c) {
    const auto& cv = mesh.cells[c];
    for (int f = 0; f < 4; ++f) {
      std::array<Index, 3> key{};
      int m = 0;
      for (int a = 0; a < 4; ++a)
        if (a != f) key[m++] = cv[a];
      std::sort(key.begin(), key.end());
      slots.push_back({key, c, f});
    }
  }
  std::sort(slots.begin(), slots.end(), [](const Slot& a, const Slot& b) {
    return std::tie(a.key, a.cell) < std::tie(b.key, b.cell);
  });

  mesh.interior_faces.clear();
  mesh.boundary_faces.clear();
  auto face_normal = [&](const std::array<Index, 3>& key, Index cell, int opposite,
                         double& area) {
    const Vec3& p0 = mesh.vertices[key[0]];
    Vec3 n = (mesh.vertices[key[1]] - p0).cross(mesh.vertices[key[2]] - p0);
    area = 0.5 * n.norm();
    n.normalize();
    if (n.dot(mesh.vertices[mesh.cells[cell][opposite]] - p0) > 0.0) n = -n;
    return n;
  };
  for (std::size_t s = 0; s < slots.size();) {
    std::size_t e = s;
    while (e < slots.size() && slots[e].key == slots[s].key) ++e;
    const std::size_t count = e - s;
    double area = 0.0;
    if (count == 1) {
      const Vec3 n = face_normal(slots[s].key, slots[s].cell, slots[s].opposite, area);
      mesh.boundary_faces.push_back({slots[s].key, slots[s].cell, n, area});
    } else if (count == 2) {
      // Sorted by cell, so slots[s] holds the lower index.
      const Vec3 n = face_normal(slots[s].key, slots[s].cell, slots[s].opposite, area);
      mesh.interior_faces.push_back({slots[s].key, slots[s].cell, slots[s + 1].cell, n, area});
    } else {
      std::ostringstream msg;
      msg << "non-manifold face (" << slots[s].key[0] << ", " << slots[s].key[1] << ", "
          << slots[s].key[2] << ") shared by " << count << " cells";
      throw MeshError(msg.str());
    }
    s = e;
  }
}

PointLocator::PointLocator(const Mesh3& mesh) : mesh_(&mesh) {
  const Vec3 extent = mesh.hi - mesh.lo;
  // Aim for a bin edge close to the typical cell size.
  const double cells_per_axis =
      std::max(1.0, std::cbrt(static_cast<double>(mesh.num_cells()) / 6.0));
  for (int d = 0; d < 3; ++d) bins_[d] = std::max(1, static_cast<int>(std::lround(cells_per_axis)));
  bin_size_ = extent.cwiseQuotient(Vec3(bins_[0], bins_[1], bins_[2]));
  tol_ = kContainTol * extent.maxCoeff();
  buckets_.assign(static_cast<std::size_t>(bins_[0]) * bins_[1] * bins_[2], {});
  for (Index c = 0; c < mesh.num_cells(); ++c) {
    Vec3 blo = mesh.vertices[mesh.cells[c][0]];
    Vec3 bhi = blo;
    for (Index v : mesh.cells[c]) {
      blo = blo.cwiseMin(mesh.vertices[v]);
      bhi = bhi.cwiseMax(mesh.vertices[v]);
    }
    const auto a = bin_of(blo - Vec3::Constant(tol_));
    const auto b = bin_of(bhi + Vec3::Constant(tol_));
    for (int k = a[2]; k <= b[2]; ++k)
      for (int j = a[1]; j <= b[1]; ++j)
        for (int i = a[0]; i <= b[0]; ++i)
          buckets_[static_cast<std::size_t>(i + bins_[0] * (j + bins_[1] * k))].push_back(c);
  }
}

std::array<int, 3> PointLocator::bin_of(const Vec3& p) const {
  std::array<int, 3> b{};
  for (int d = 0; d < 3; ++d) {
    const double t = (p[d] - mesh_->lo[d]) / bin_size_[d];
    b[d] = std::clamp(static_cast<int>(std::floor(t)), 0, bins_[d] - 1);
  }
  return b;
}

namespace {

bool contains(const std::array<double, 4>& lambda) {
  return std::all_of(lambda.begin(), lambda.end(), [](double l) { return l >= -kContainTol; });
}

void check_inside_box(const Mesh3& m, const Vec3& p, double tol) {
  for (int d = 0; d < 3; ++d) {
    if (!(p[d] >= m.lo[d] - tol && p[d] <= m.hi[d] + tol)) {
      std::ostringstream msg;
      msg << "point (" << p[0] << ", " << p[1] << ", " << p[2] << ") lies outside the domain";
      throw GeometryError(msg.str());
    }
  }
}

}  // namespace

PointLocation PointLocator::locate(const Vec3& p) const {
  check_inside_box(*mesh_, p, tol_);
  const auto b = bin_of(p);
  const auto& bucket = buckets_[static_cast<std::size_t>(b[0] + bins_[0] * (b[1] + bins_[1] * b[2]))];
  // Buckets are sorted, so the first hit is the lowest containing cell.
  for (Index c : bucket) {
    const auto lambda = mesh_->barycentric(c, p);
    if (contains(lambda)) return {c, lambda};
  }
  return locate_brute_force(p);
}

PointLocation PointLocator::locate_brute_force(const Vec3& p) const {
  check_inside_box(*mesh_, p, tol_);
  for (Index c = 0; c < mesh_->num_cells(); ++c) {
    const auto lambda = mesh_->barycentric(c, p);
    if (contains(lambda)) return {c, lambda};
  }
  std::ostringstream msg;
  msg << "no cell contains point (" << p[0] << ", " << p[1] << ", " << p[2] << ")";
  throw GeometryError(msg.str());
}

PointLocation locate_point(const Mesh3& /*mesh*/, const Vec3& p, const PointLocator& locator) {
  return locator.locate(p);
}

}  // namespace dg3d1d
