#include "doctest.h"

#include <algorithm>
#include <map>
#include <random>

#include "dg3d1d/errors.hpp"
#include "dg3d1d/mesh.hpp"

using namespace dg3d1d;

namespace {

double total_volume(const Mesh3& m) {
  double v = 0.0;
  for (double x : m.volumes) v += x;
  return v;
}

// Counts every cell face by its sorted vertex triple.
std::map<std::array<Index, 3>, int> face_counts(const Mesh3& m) {
  std::map<std::array<Index, 3>, int> count;
  for (const auto& c : m.cells)
    for (int skip = 0; skip < 4; ++skip) {
      std::array<Index, 3> f{};
      int k = 0;
      for (int a = 0; a < 4; ++a)
        if (a != skip) f[k++] = c[a];
      std::sort(f.begin(), f.end());
      ++count[f];
    }
  return count;
}

}  // namespace

TEST_CASE("box mesh sizes") {
  const auto m1 = build_box_mesh(1, Vec3::Zero(), Vec3::Ones());
  CHECK(m1.num_cells() == 6);
  CHECK(m1.num_vertices() == 8);
  CHECK(total_volume(m1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(m1.interior_faces.size() == 6);
  CHECK(m1.boundary_faces.size() == 12);

  const auto m4 = build_box_mesh(4, Vec3::Zero(), Vec3::Ones());
  CHECK(m4.num_cells() == 384);
  CHECK(m4.num_vertices() == 125);
  for (double v : m4.volumes) CHECK(v > 0.0);
}

TEST_CASE("face enumeration matches brute force at n = 2") {
  const auto m = build_box_mesh(2, Vec3::Constant(-0.5), Vec3::Constant(0.5));
  const auto count = face_counts(m);
  std::size_t ones = 0, twos = 0;
  for (const auto& [f, c] : count) {
    CHECK(c <= 2);
    (c == 1 ? ones : twos)++;
  }
  CHECK(m.boundary_faces.size() == 48);
  CHECK(ones == 48);
  CHECK(m.interior_faces.size() == twos);
  CHECK(m.interior_faces.size() == (6 * 8 * 4 - 48) / 2);
  for (const auto& f : m.interior_faces) {
    auto key = f.vertices;
    std::sort(key.begin(), key.end());
    CHECK(count.at(key) == 2);
  }
}

TEST_CASE("face normals and orientation") {
  const auto m = build_box_mesh(3, Vec3(0, -1, 2), Vec3(2, 1, 3));
  CHECK(total_volume(m) == doctest::Approx(4.0).epsilon(1e-12));
  for (const auto& f : m.interior_faces) {
    CHECK(f.left < f.right);
    CHECK(f.normal.norm() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(f.normal.dot(m.centroid(f.right) - m.centroid(f.left)) > 0.0);
  }
  for (const auto& f : m.boundary_faces) {
    const Vec3 mid = (m.vertices[f.vertices[0]] + m.vertices[f.vertices[1]] + m.vertices[f.vertices[2]]) / 3.0;
    CHECK(f.normal.dot(mid - m.centroid(f.owner)) > 0.0);
  }
}

TEST_CASE("single tetrahedron and orientation repair") {
  // negatively oriented input is reordered
  const auto m = make_mesh({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {{0, 2, 1, 3}});
  CHECK(m.interior_faces.empty());
  CHECK(m.boundary_faces.size() == 4);
  CHECK(m.volumes[0] == doctest::Approx(1.0 / 6.0));
}

TEST_CASE("non-manifold face is rejected") {
  std::vector<Vec3> v{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, 0, -1}, {1, 1, 1}};
  CHECK_THROWS_AS(make_mesh(v, {{0, 1, 2, 3}, {0, 1, 2, 4}, {0, 1, 2, 5}}), MeshError);
}

TEST_CASE("invalid box arguments") {
  CHECK_THROWS_AS(build_box_mesh(0, Vec3::Zero(), Vec3::Ones()), InvalidArgument);
  CHECK_THROWS_AS(build_box_mesh(2, Vec3::Zero(), Vec3(1, 0, 1)), InvalidArgument);
}

TEST_CASE("mesh size halves under refinement") {
  const auto a = build_box_mesh(3, Vec3::Zero(), Vec3::Ones());
  const auto b = build_box_mesh(6, Vec3::Zero(), Vec3::Ones());
  CHECK(a.max_diameter() / b.max_diameter() == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("locate: centroids, vertices and brute force") {
  const auto m = build_box_mesh(4, Vec3::Constant(-0.5), Vec3::Constant(0.5));
  const PointLocator loc(m);

  const auto at17 = loc.locate(m.centroid(17));
  CHECK(at17.cell == 17);
  for (double l : at17.barycentric) CHECK(l == doctest::Approx(0.25).epsilon(1e-12));

  // interior vertex: lowest cell index among all cells touching it
  const Vec3 p = Vec3::Zero();
  Index lowest = -1;
  for (Index c = 0; c < m.num_cells() && lowest < 0; ++c)
    for (Index v : m.cells[c])
      if ((m.vertices[v] - p).norm() < 1e-14) lowest = c;
  CHECK(loc.locate(p).cell == lowest);

  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  int agree = 0;
  for (int i = 0; i < 1000; ++i) {
    const Vec3 q(u(rng), u(rng), u(rng));
    const auto a = loc.locate(q);
    const auto b = loc.locate_brute_force(q);
    agree += a.cell == b.cell;
    double sum = 0.0;
    for (double l : a.barycentric) {
      CHECK(l >= -1e-12);
      sum += l;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(agree == 1000);

  CHECK_THROWS_AS((void)loc.locate(Vec3(0.6, 0, 0)), GeometryError);
}
