#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "dg3d1d/coupling.hpp"
#include "dg3d1d/errors.hpp"

using namespace dg3d1d;

namespace {

struct Setup {
  Mesh3 mesh;
  PointLocator locator;
  DgSpace3 space3;
  VesselGraph graph;
  DgSpace1 space1;
  QuadRules rules;

  Setup(int n, double h1, VesselGraph g, int k = 1)
      : mesh(build_box_mesh(n, Vec3::Constant(-0.5), Vec3::Constant(0.5))),
        locator(mesh),
        space3(mesh),
        graph(std::move(g)),
        space1(graph, build_edge_meshes(graph, h1), k),
        rules(quad_rules(k)) {}
};

VesselGraph axis_vessel(double radius = 0.05, double xi = 1.0) {
  return VesselGraph({{0, 0, -0.5}, {0, 0, 0.5}},
                     {{.v_in = 0, .v_out = 1, .radius = radius, .xi = xi, .cells = 0, .area_override = {}}});
}

// Slow path: locate every circle point and evaluate the P1 field there.
double slow_average(const Setup& s, std::span<const double> x, const LineSample& smp, int m) {
  const auto frame = make_frame(s.graph.tangent(smp.edge));
  const auto pts = circle_points(frame, s.space1.point(smp.edge, smp.s), s.graph.edges()[smp.edge].radius, m);
  double sum = 0.0;
  for (const auto& p : pts) {
    const Index c = s.locator.locate_brute_force(p.point).cell;
    sum += s.space3.eval(x, c, p.point);
  }
  return sum / m;
}

std::vector<double> random_vector(Index n, std::mt19937& rng) {
  std::normal_distribution<double> d(0.0, 1.0);
  std::vector<double> v(static_cast<std::size_t>(n));
  for (double& x : v) x = d(rng);
  return v;
}

// [x; y]^T C [x; y] from the four blocks.
double block_form(const CouplingBlocks& c, std::span<const double> x, std::span<const double> y) {
  return dot(x, spmv(c.omega_omega, x)) + dot(x, spmv(c.omega_lambda, y)) + dot(y, spmv(c.lambda_omega, x)) +
         dot(y, spmv(c.lambda_lambda, y));
}

}  // namespace

TEST_CASE("average of constants and coordinate fields") {
  const Setup s(4, 0.125, axis_vessel());
  for (auto sampling : {AverageSampling::gauss, AverageSampling::nodal}) {
    const auto avg = build_average_operator(s.space3, s.locator, s.space1, s.rules.interval, 16, sampling);
    const std::vector<double> ones(s.space3.num_dofs(), 1.0);
    for (double v : spmv(avg.pi, ones)) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
    const auto gz = spmv(avg.pi, s.space3.interpolate([](const Vec3& p) { return p.z(); }));
    const auto gx = spmv(avg.pi, s.space3.interpolate([](const Vec3& p) { return p.x(); }));
    for (std::size_t r = 0; r < avg.samples.size(); ++r) {
      CHECK(gz[r] == doctest::Approx(avg.samples[r].s - 0.5).epsilon(1e-12));
      CHECK(std::abs(gx[r]) < 1e-12);
    }
  }
}

TEST_CASE("average operator matches the slow path on random fields") {
  const VesselGraph g({{-0.3, -0.2, -0.35}, {0.25, 0.3, 0.3}},
                      {{.v_in = 0, .v_out = 1, .radius = 0.07, .xi = 1.0, .cells = 0, .area_override = {}}});
  const Setup s(5, 0.1, g);
  const auto avg = build_average_operator(s.space3, s.locator, s.space1, s.rules.interval, 12);
  std::mt19937 rng(9);
  for (int trial = 0; trial < 3; ++trial) {
    const auto x = random_vector(s.space3.num_dofs(), rng);
    const auto fast = spmv(avg.pi, x);
    for (std::size_t r = 0; r < avg.samples.size(); ++r)
      CHECK(std::abs(fast[r] - slow_average(s, x, avg.samples[r], 12)) < 1e-12);
  }
}

TEST_CASE("coupling blocks: symmetry, PSD and brute-force quadratic form") {
  const Setup s(4, 0.1, axis_vessel(0.05, 2.0), 2);
  const auto avg = build_average_operator(s.space3, s.locator, s.space1, s.rules.interval, 16);
  const auto c = assemble_coupling(avg, s.space3, s.space1);
  const auto lo_t = c.lambda_omega.transpose();
  for (const auto& t : c.omega_lambda.to_triplets()) CHECK(std::abs(t.value - lo_t.coeff(t.row, t.col)) < 1e-13);
  CHECK(c.omega_omega.asymmetry() < 1e-13);
  CHECK(c.lambda_lambda.asymmetry() < 1e-13);

  std::mt19937 rng(4);
  const auto& e = s.graph.edges()[0];
  for (int trial = 0; trial < 5; ++trial) {
    const auto x = random_vector(s.space3.num_dofs(), rng);
    const auto y = random_vector(s.space1.num_dofs(), rng);
    const double form = block_form(c, x, y);
    CHECK(form >= 0.0);
    // Gauss sum over cells of the edge, independent of the assembled blocks
    double ref = 0.0;
    const auto& mesh = s.space1.meshes()[0];
    for (int cell = 0; cell < mesh.cells; ++cell)
      for (std::size_t q = 0; q < s.rules.interval.size(); ++q) {
        const double xi = s.rules.interval.points[q][0];
        const LineSample smp{0, cell, xi, (cell + xi) * mesh.h(), s.rules.interval.weights[q] * mesh.h()};
        const double d = slow_average(s, x, smp, 16) - s.space1.eval(y, 0, cell, xi);
        ref += smp.weight * e.xi * e.perimeter() * d * d;
      }
    CHECK(form == doctest::Approx(ref).epsilon(1e-12));
  }
}

TEST_CASE("coupling form on constants") {
  const Setup s(4, 0.125, axis_vessel());
  const auto avg = build_average_operator(s.space3, s.locator, s.space1, s.rules.interval, 16);
  const auto c = assemble_coupling(avg, s.space3, s.space1);
  const std::vector<double> x0(s.space3.num_dofs(), 0.0), x1(s.space3.num_dofs(), 1.7);
  const std::vector<double> y1(s.space1.num_dofs(), 1.0), y17(s.space1.num_dofs(), 1.7);
  CHECK(std::abs(block_form(c, x1, y17)) < 1e-12);
  CHECK(block_form(c, x0, y1) == doctest::Approx(2 * std::numbers::pi * 0.05).epsilon(1e-13));

  // unchanged when the 1D mesh is refined
  const Setup f(4, 0.03125, axis_vessel());
  const auto avg_f = build_average_operator(f.space3, f.locator, f.space1, f.rules.interval, 16);
  const auto cf = assemble_coupling(avg_f, f.space3, f.space1);
  const std::vector<double> yf(f.space1.num_dofs(), 1.0);
  CHECK(block_form(cf, x0, yf) == doctest::Approx(block_form(c, x0, y1)).epsilon(1e-12));
}

TEST_CASE("average of the interpolant of x^2 + y^2 converges at second order") {
  // n = 4 has h > R and is still pre-asymptotic
  std::vector<double> err;
  for (int n : {8, 16, 32}) {
    const Setup s(n, 0.25, axis_vessel());
    const auto avg = build_average_operator(s.space3, s.locator, s.space1, s.rules.interval, 32);
    const auto v = spmv(avg.pi, s.space3.interpolate([](const Vec3& p) { return p.x() * p.x() + p.y() * p.y(); }));
    double e = 0.0;
    for (double a : v) e = std::max(e, std::abs(a - 0.0025));
    err.push_back(e);
  }
  CHECK(std::log2(err[0] / err[1]) > 1.8);
  CHECK(std::log2(err[1] / err[2]) > 1.8);
}

TEST_CASE("vessel wall outside the box is a geometry error") {
  const VesselGraph g({{0.47, 0, -0.4}, {0.47, 0, 0.4}},
                      {{.v_in = 0, .v_out = 1, .radius = 0.05, .xi = 1.0, .cells = 0, .area_override = {}}});
  const Setup s(2, 0.25, g);
  try {
    (void)build_average_operator(s.space3, s.locator, s.space1, s.rules.interval, 16);
    FAIL("expected a geometry error");
  } catch (const GeometryError& e) {
    CHECK(std::string(e.what()).find("edge 0") != std::string::npos);
  }
}
