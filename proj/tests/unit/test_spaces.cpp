#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "dg3d1d/assembly3d.hpp"
#include "dg3d1d/quadrature.hpp"
#include "dg3d1d/spaces.hpp"

using namespace dg3d1d;

namespace {

template <int D, class F>
double integrate(const QuadRule<D>& r, F f) {
  double s = 0.0;
  for (std::size_t q = 0; q < r.size(); ++q) s += r.weights[q] * f(r.points[q]);
  return s;
}

}  // namespace

TEST_CASE("reference integrals") {
  const auto tet = tet_rule(2);
  CHECK(integrate(tet, [](auto) { return 1.0; }) == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
  CHECK(integrate(tet, [](auto p) { return p[0] * p[1]; }) == doctest::Approx(1.0 / 120.0).epsilon(1e-13));
  const auto g2 = gauss_legendre(2);
  CHECK(integrate(g2, [](auto p) { return p[0] * p[0]; }) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  const auto tri = triangle_rule(2);
  CHECK(integrate(tri, [](auto) { return 1.0; }) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("rules are exact to their degree and have positive weights") {
  for (int n = 1; n <= 6; ++n) CHECK(exactness_error(gauss_legendre(n)) < 1e-13);
  for (int d = 1; d <= 6; ++d) {
    const auto tr = triangle_rule(d);
    const auto te = tet_rule(d);
    CHECK(tr.degree >= d);
    CHECK(te.degree >= d);
    CHECK(exactness_error(tr) < 1e-13);
    CHECK(exactness_error(te) < 1e-13);
    for (double w : te.weights) CHECK(w > 0.0);
    for (double w : tr.weights) CHECK(w > 0.0);
  }
  const auto rules = quad_rules(2);
  CHECK(rules.tet_error.degree >= 5);
  CHECK(rules.interval.degree >= 4);
}

TEST_CASE("P1 basis: nodal values, partition of unity") {
  const auto m = build_box_mesh(2, Vec3::Zero(), Vec3::Ones());
  const DgSpace3 space(m);
  CHECK(space.num_dofs() == 4 * 48);
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (Index c = 0; c < m.num_cells(); c += 7) {
    for (int j = 0; j < 4; ++j) {
      const auto b = space.eval_basis(c, m.vertices[m.cells[c][j]]);
      for (int i = 0; i < 4; ++i) CHECK(b.values[i] == doctest::Approx(i == j ? 1.0 : 0.0).scale(1.0).epsilon(1e-13));
    }
    // random interior point via random barycentrics
    double l[4], s = 0;
    for (double& x : l) s += (x = u(rng));
    Vec3 p = Vec3::Zero();
    for (int a = 0; a < 4; ++a) p += (l[a] / s) * m.vertices[m.cells[c][a]];
    const auto b = space.eval_basis(c, p);
    double sv = 0;
    Vec3 sg = Vec3::Zero();
    for (int a = 0; a < 4; ++a) {
      sv += b.values[a];
      sg += b.gradients[a];
    }
    CHECK(sv == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(sg.norm() < 1e-12);
  }
}

TEST_CASE("interpolant of x has gradient e_x everywhere") {
  const auto m = build_box_mesh(3, Vec3(-1, 0, 0), Vec3(1, 1, 2));
  const DgSpace3 space(m);
  const auto x = space.interpolate([](const Vec3& p) { return p.x(); });
  for (Index c = 0; c < m.num_cells(); ++c)
    CHECK((space.eval_gradient(x, c) - Vec3(1, 0, 0)).norm() < 1e-12);
}

TEST_CASE("L2 projection reproduces affine fields and converges for smooth ones") {
  const auto rules = quad_rules(1);
  const auto affine = [](const Vec3& p) { return 1.0 + 2 * p.x() - p.y() + 0.5 * p.z(); };
  const auto m = build_box_mesh(2, Vec3::Zero(), Vec3::Ones());
  const DgSpace3 space(m);
  const auto proj = l2_project_3d(space, affine, rules.tet_error);
  const auto interp = space.interpolate(affine);
  for (std::size_t i = 0; i < proj.size(); ++i) CHECK(std::abs(proj[i] - interp[i]) < 1e-12);

  const auto f = [](const Vec3& p) { return std::sin(std::numbers::pi * p.z()); };
  std::vector<double> err;
  for (int n : {2, 4, 8}) {
    const auto mesh = build_box_mesh(n, Vec3::Zero(), Vec3::Ones());
    const DgSpace3 sp(mesh);
    const auto x = l2_project_3d(sp, f, rules.tet_error);
    double e2 = 0;
    for (Index c = 0; c < mesh.num_cells(); ++c)
      for (std::size_t q = 0; q < rules.tet_error.size(); ++q) {
        const Vec3 p = sp.map(c, rules.tet_error.points[q]);
        const double d = sp.eval(x, c, p) - f(p);
        e2 += rules.tet_error.weights[q] * 6 * mesh.volumes[c] * d * d;
      }
    err.push_back(std::sqrt(e2));
  }
  CHECK(std::log2(err[1] / err[2]) > 1.8);
  CHECK(std::log2(err[0] / err[1]) > 1.7);
}

TEST_CASE("1D Lagrange basis") {
  for (int k : {1, 2}) {
    for (int j = 0; j <= k; ++j) {
      const auto v = lagrange_values(k, static_cast<double>(j) / k);
      for (int i = 0; i <= k; ++i) CHECK(v[i] == doctest::Approx(i == j ? 1.0 : 0.0));
    }
    const auto d = lagrange_derivatives(k, 0.37);
    double s = 0;
    for (double x : d) s += x;
    CHECK(std::abs(s) < 1e-13);
  }
}

TEST_CASE("1D space numbering and evaluation") {
  const VesselGraph g({{0, 0, 0}, {0, 0, 2}, {1, 0, 2}},
                      {{.v_in = 0, .v_out = 1, .radius = 0.1, .xi = 1, .cells = 0, .area_override = {}},
                       {.v_in = 1, .v_out = 2, .radius = 0.1, .xi = 1, .cells = 0, .area_override = {}}});
  const DgSpace1 space(g, build_edge_meshes(g, 0.5), 2);
  CHECK(space.num_dofs() == (4 + 2) * 3);
  CHECK(space.offset(1) == 12);
  CHECK(space.dof(1, 1, 2) == 12 + 3 + 2);
  CHECK((space.point(0, 0.5) - Vec3(0, 0, 0.5)).norm() < 1e-15);
  const auto x = space.interpolate([](Index e, double s) { return e == 0 ? s * s : 1.0 - s; });
  CHECK(space.eval(x, 0, 2, 0.5) == doctest::Approx(1.25 * 1.25).epsilon(1e-13));
  CHECK(space.eval_derivative(x, 0, 2, 0.5) == doctest::Approx(2 * 1.25).epsilon(1e-13));
  CHECK(space.end_at(0, 1).cell == 3);
  CHECK(space.end_at(0, 1).xi == 1.0);
  CHECK(space.end_at(1, 1).cell == 0);
  CHECK(space.end_at(1, 1).xi == 0.0);
}
