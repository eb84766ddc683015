#include "doctest.h"

#include <Eigen/Dense>

#include <cmath>
#include <random>

#include "dg3d1d/assembly3d.hpp"
#include "dg3d1d/cg.hpp"

using namespace dg3d1d;

namespace {

Eigen::MatrixXd dense(const SparseMatrix& a) {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(a.rows(), a.cols());
  for (const auto& t : a.to_triplets()) d(t.row, t.col) += t.value;
  return d;
}

// Two tetrahedra glued along the face {1, 2, 3}.
Mesh3 two_cells() {
  return make_mesh({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}}, {{0, 1, 2, 3}, {1, 2, 3, 4}});
}

int local_index(const Mesh3& m, Index cell, Index vertex) {
  for (int a = 0; a < 4; ++a)
    if (m.cells[cell][a] == vertex) return a;
  return -1;
}

// Exact P1 face mass |F|/12 (1 + delta_ij), assembled over the jump pattern.
Eigen::MatrixXd hand_penalty(const Mesh3& m, double sigma) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(4 * m.num_cells(), 4 * m.num_cells());
  auto add_face = [&](const std::array<Index, 3>& fv, double area, std::vector<std::pair<Index, double>> sides) {
    const double c = sigma / std::sqrt(area);
    for (auto [ci, si] : sides)
      for (auto [cj, sj] : sides)
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) {
            const int li = local_index(m, ci, fv[i]);
            const int lj = local_index(m, cj, fv[j]);
            a(4 * ci + li, 4 * cj + lj) += c * si * sj * area / 12.0 * (i == j ? 2.0 : 1.0);
          }
  };
  for (const auto& f : m.interior_faces) add_face(f.vertices, f.area, {{f.left, 1.0}, {f.right, -1.0}});
  for (const auto& f : m.boundary_faces) add_face(f.vertices, f.area, {{f.owner, 1.0}});
  return a;
}

}  // namespace

TEST_CASE("penalty coefficient uses the square root of the face area") {
  CHECK(penalty_coefficient(30.0, 0.25) == doctest::Approx(60.0));
  CHECK(penalty_coefficient(30.0, 0.25 / 4) == doctest::Approx(2 * penalty_coefficient(30.0, 0.25)));
}

TEST_CASE("parameter validation") {
  IpdgParams p;
  CHECK_NOTHROW(p.validate());
  p.epsilon = 2;
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
  p = {};
  p.sigma = 5.0;
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
  p.epsilon = 1;
  CHECK_NOTHROW(p.validate());
  p.sigma = 0.0;
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
}

TEST_CASE("two-cell penalty block matches hand assembly") {
  const auto m = two_cells();
  REQUIRE(m.interior_faces.size() == 1);
  REQUIRE(m.boundary_faces.size() == 6);
  const DgSpace3 space(m);
  const auto rules = quad_rules(1);
  IpdgParams p;
  const auto a = dense(assemble_a_h(space, p, rules.triangle, kPenalty));
  CHECK((a - hand_penalty(m, p.sigma)).cwiseAbs().maxCoeff() < 1e-12 * a.cwiseAbs().maxCoeff());
}

TEST_CASE("two-cell volume block is the P1 stiffness") {
  const auto m = two_cells();
  const DgSpace3 space(m);
  const auto a = dense(assemble_a_h(space, IpdgParams{}, quad_rules(1).triangle, kVolume));
  for (Index c = 0; c < 2; ++c) {
    const auto g = space.gradients(c);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        CHECK(a(4 * c + i, 4 * c + j) == doctest::Approx(m.volumes[c] * g[i].dot(g[j])).epsilon(1e-13));
  }
  CHECK(a.block(0, 4, 4, 4).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("symmetry and skew structure of the face terms") {
  const auto m = build_box_mesh(2, Vec3::Zero(), Vec3::Ones());
  const DgSpace3 space(m);
  const auto tri = quad_rules(1).triangle;
  IpdgParams sym;
  const auto a = assemble_a_h(space, sym, tri);
  CHECK(a.asymmetry() < 1e-12 * a.max_abs());

  IpdgParams nip;
  nip.epsilon = 1;
  const auto c = dense(assemble_a_h(space, nip, tri, kConsistency | kAdjoint));
  CHECK((c + c.transpose()).cwiseAbs().maxCoeff() < 1e-12 * c.cwiseAbs().maxCoeff());
  CHECK(c.cwiseAbs().maxCoeff() > 0.0);

  IpdgParams iip;
  iip.epsilon = 0;
  const auto i0 = dense(assemble_a_h(space, iip, tri, kAdjoint));
  CHECK(i0.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("coercivity: two-cell eigenvalues and random quadratic forms") {
  const auto m2 = two_cells();
  const DgSpace3 s2(m2);
  const auto a2 = dense(assemble_a_h(s2, IpdgParams{}, quad_rules(1).triangle));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(a2);
  CHECK(eig.eigenvalues().minCoeff() > 0.0);

  const auto m = build_box_mesh(4, Vec3::Zero(), Vec3::Ones());
  const DgSpace3 space(m);
  const auto a = assemble_a_h(space, IpdgParams{}, quad_rules(1).triangle);
  std::mt19937 rng(1);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> x(space.num_dofs());
    for (double& v : x) v = n(rng);
    CHECK(dot(x, spmv(a, x)) > 0.0);
  }
}

TEST_CASE("assembled penalty entries halve with the mesh size") {
  const auto tri = quad_rules(1).triangle;
  const auto m2 = build_box_mesh(2, Vec3::Zero(), Vec3::Ones());
  const auto m4 = build_box_mesh(4, Vec3::Zero(), Vec3::Ones());
  const DgSpace3 s2(m2), s4(m4);
  const auto p2 = assemble_a_h(s2, IpdgParams{}, tri, kPenalty);
  const auto p4 = assemble_a_h(s4, IpdgParams{}, tri, kPenalty);
  // coefficient doubles, face mass shrinks by four
  CHECK(p4.max_abs() / p2.max_abs() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(penalty_coefficient(30.0, m4.interior_faces[0].area) ==
        doctest::Approx(2 * penalty_coefficient(30.0, m2.interior_faces[0].area)));
}

TEST_CASE("mass and load") {
  const auto m = build_box_mesh(3, Vec3::Zero(), Vec3::Ones());
  const DgSpace3 space(m);
  const auto rules = quad_rules(1);
  const auto mass = assemble_mass_3d(space, rules.tet);
  const std::vector<double> one(space.num_dofs(), 1.0);
  CHECK(dot(one, spmv(mass, one)) == doctest::Approx(1.0).epsilon(1e-12));
  for (const auto& t : mass.to_triplets()) CHECK(t.row / 4 == t.col / 4);
  CHECK(mass.asymmetry() == 0.0);

  const auto l1 = assemble_load_3d(space, [](const Vec3&) { return 1.0; }, rules.tet);
  CHECK(dot(one, l1) == doctest::Approx(1.0).epsilon(1e-12));
  const auto lx = assemble_load_3d(space, [](const Vec3& p) { return p.x(); }, rules.tet);
  CHECK(dot(one, lx) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("weak Dirichlet data: zero data and affine consistency") {
  const auto m = build_box_mesh(3, Vec3::Constant(-0.5), Vec3::Constant(0.5));
  const DgSpace3 space(m);
  const auto tri = quad_rules(1).triangle;
  const IpdgParams p;
  const auto zero = dirichlet_rhs(space, p, [](const Vec3&) { return 0.0; }, tri);
  for (double v : zero) CHECK(v == 0.0);

  const auto g = [](const Vec3& x) { return 0.3 + x.x() - 2 * x.y() + 0.7 * x.z(); };
  const auto a = assemble_a_h(space, p, tri);
  const auto b = dirichlet_rhs(space, p, g, tri);
  const auto ug = space.interpolate(g);
  const auto au = spmv(a, ug);
  double r = 0.0;
  for (std::size_t i = 0; i < au.size(); ++i) r = std::max(r, std::abs(au[i] - b[i]));
  CHECK(r < 1e-10);

  CgOptions opt;
  opt.tol = 1e-13;
  const auto sol = cg_solve(a, b, opt);
  const auto rule = quad_rules(1).tet_error;
  double e2 = 0.0;
  for (Index c = 0; c < m.num_cells(); ++c)
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const Vec3 x = space.map(c, rule.points[q]);
      const double d = space.eval(sol.x, c, x) - g(x);
      e2 += rule.weights[q] * 6 * m.volumes[c] * d * d;
    }
  CHECK(std::sqrt(e2) < 1e-9);
}
