#include "dg3d1d/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>

#include "dg3d1d/errors.hpp"

namespace dg3d1d {

namespace {

constexpr double kPi = std::numbers::pi;

double radial_factor(double r, double radius) {
  return r > radius ? 1.0 - radius * std::log(r / radius) : 1.0;
}

}  // namespace

double Mms3d1d::u_hat(double z) const { return std::sin(kPi * z) + 2.0; }
double Mms3d1d::du_hat(double z) const { return kPi * std::cos(kPi * z); }

double Mms3d1d::u(const Vec3& p) const {
  return c() * radial_factor(std::hypot(p.x(), p.y()), radius) * u_hat(p.z());
}

Vec3 Mms3d1d::grad_u(const Vec3& p) const {
  const double r = std::hypot(p.x(), p.y());
  const double uh = u_hat(p.z());
  Vec3 g(0.0, 0.0, c() * radial_factor(r, radius) * du_hat(p.z()));
  if (r > radius) {
    g.x() = -c() * radius * p.x() / (r * r) * uh;
    g.y() = -c() * radius * p.y() / (r * r) * uh;
  }
  return g;
}

double Mms3d1d::f(const Vec3& p) const {
  return c() * radial_factor(std::hypot(p.x(), p.y()), radius) * kPi * kPi *
         std::sin(kPi * p.z());
}

double Mms3d1d::f_hat(double z) const {
  const double area = kPi * radius * radius;
  const double perimeter = 2.0 * kPi * radius;
  return kPi * kPi * std::sin(kPi * z) + perimeter / area * xi * (1.0 - c()) * u_hat(z);
}

VesselGraph Mms3d1d::graph() const {
  VesselEdge e{.v_in = 0, .v_out = 1, .radius = radius, .xi = xi, .area_override = {}};
  return VesselGraph({Vec3(0, 0, -0.5), Vec3(0, 0, 0.5)}, {e});
}

ProblemData Mms3d1d::data() const {
  ProblemData d;
  d.f = [*this](const Vec3& p) { return f(p); };
  d.g = [*this](const Vec3& p) { return u(p); };
  d.f_hat = [*this](Index, double s) { return f_hat(s - 0.5); };
  return d;
}

VesselGraph MmsNetwork::graph() const {
  std::vector<Vec3> v{{0, 0, 0},    {0, 1, 0},    {-1, 2, 0},  {1, 2, 0},
                      {-1.5, 3, 0}, {-0.5, 3, 0}, {0.5, 3, 0}, {1.5, 3, 0}};
  const std::array<std::pair<Index, Index>, 7> ends{
      {{0, 1}, {1, 2}, {1, 3}, {2, 4}, {2, 5}, {3, 6}, {3, 7}}};
  std::vector<VesselEdge> edges;
  for (const auto& [a, b] : ends) {
    VesselEdge e{.v_in = a, .v_out = b, .radius = 0.05, .xi = 0.0, .area_override = 1.0};
    edges.push_back(e);
  }
  return VesselGraph(std::move(v), std::move(edges));
}

namespace {

// dy/ds and y at s = 0 per edge of the tree.
struct NetworkEdgeMap {
  double y0;
  double dy_ds;
};

NetworkEdgeMap network_edge_map(Index edge) {
  if (edge == 0) return {0.0, 1.0};
  if (edge <= 2) return {1.0, 1.0 / std::sqrt(2.0)};
  return {2.0, 2.0 / std::sqrt(5.0)};
}

}  // namespace

double MmsNetwork::u_hat(Index edge, double s) const {
  const auto m = network_edge_map(edge);
  const double y = m.y0 + m.dy_ds * s;
  if (edge == 0) return y + std::cos(2.0 * kPi * y);
  if (edge <= 2) return 2.0 + 0.5 * std::sqrt(2.0) * (y - 1.0);
  return 2.0 + 0.5 * std::sqrt(2.0) + std::sqrt(5.0) / 8.0 * (y - 2.0);
}

double MmsNetwork::du_hat(Index edge, double s) const {
  const auto m = network_edge_map(edge);
  const double y = m.y0 + m.dy_ds * s;
  if (edge == 0) return 1.0 - 2.0 * kPi * std::sin(2.0 * kPi * y);
  if (edge <= 2) return 0.5 * std::sqrt(2.0) * m.dy_ds;
  return std::sqrt(5.0) / 8.0 * m.dy_ds;
}

double MmsNetwork::f_hat(Index edge, double s) const {
  if (edge != 0) return 0.0;
  return 4.0 * kPi * kPi * std::cos(2.0 * kPi * s);
}

double MmsNetwork::vertex_value(Index v) const {
  if (v == 0) return u_hat(0, 0.0);
  if (v == 1) return u_hat(1, 0.0);
  if (v == 2 || v == 3) return u_hat(3, 0.0);
  return u_hat(3, std::sqrt(5.0) / 2.0);
}

ProblemData MmsNetwork::data() const {
  ProblemData d;
  d.f_hat = [*this](Index e, double s) { return f_hat(e, s); };
  for (const Index v : dirichlet_vertices()) d.vertex_values.push_back(vertex_value(v));
  return d;
}

double MmsTime::u(double t, const Vec3& p) const {
  return std::exp(-t) * (a + bx * p.x() + by * p.y());
}

double MmsTime::u_hat(double t) const { return std::exp(-t) * a; }

ProblemData MmsTime::data(double t) const {
  ProblemData d;
  d.f = [*this, t](const Vec3& p) { return -u(t, p); };
  d.g = [*this, t](const Vec3& p) { return u(t, p); };
  d.f_hat = [*this, t](Index, double) { return -u_hat(t); };
  return d;
}

namespace {

struct GraphErrors {
  double l2 = 0.0;       // squared, unweighted
  double semi = 0.0;     // squared, unweighted
  double semi_a = 0.0;   // squared, A-weighted
  double penalty = 0.0;  // squared jump and vertex terms
};

GraphErrors graph_errors(const CoupledSystem& system, std::span<const double> u1,
                         std::span<const double> mult,
                         const std::function<double(Index, double)>& u_hat,
                         const std::function<double(Index, double)>& du_hat) {
  const DgSpace1& space = system.space1();
  const auto& rule = system.rules().interval_error;
  const auto& p1 = system.options().ipdg1;
  GraphErrors out;
  for (const auto& mesh : space.meshes()) {
    const double area = space.graph().edges()[mesh.edge].area();
    const double h = mesh.h();
    for (int c = 0; c < mesh.cells; ++c) {
      for (std::size_t q = 0; q < rule.size(); ++q) {
        const double xi = rule.points[q][0];
        const double s = (c + xi) * h;
        const double w = rule.weights[q] * h;
        const double ev = u_hat(mesh.edge, s) - space.eval(u1, mesh.edge, c, xi);
        const double ed = du_hat(mesh.edge, s) - space.eval_derivative(u1, mesh.edge, c, xi);
        out.l2 += w * ev * ev;
        out.semi += w * ed * ed;
        out.semi_a += w * area * ed * ed;
      }
      if (c > 0) {
        const double jump = space.eval(u1, mesh.edge, c - 1, 1.0) - space.eval(u1, mesh.edge, c, 0.0);
        out.penalty += p1.sigma_lambda / h * jump * jump;
      }
    }
  }
  const VesselGraph& graph = space.graph();
  auto end_error = [&](Index e, Index v) {
    const auto end = space.end_at(e, v);
    const double s = end.xi == 0.0 ? 0.0 : graph.length(e);
    return u_hat(e, s) - space.eval(u1, e, end.cell, end.xi);
  };
  const auto& mults = system.multipliers();
  for (Index m = 0; m < mults.size(); ++m) {
    const Index v = mults.vertices()[m];
    // Exact multiplier: the trace of the continuous exact solution.
    const Index e0 = graph.incident(v).front();
    const auto end0 = space.end_at(e0, v);
    const double exact_v = u_hat(e0, end0.xi == 0.0 ? 0.0 : graph.length(e0));
    const double em = exact_v - mult[m];
    for (const Index e : graph.incident(v)) {
      const double d = end_error(e, v) - em;
      out.penalty += p1.sigma_v / space.meshes()[e].h() * d * d;
    }
  }
  for (const Index v : system.dirichlet_vertices())
    for (const Index e : graph.incident(v)) {
      const double d = end_error(e, v);
      out.penalty += p1.sigma_v / space.meshes()[e].h() * d * d;
    }
  return out;
}

}  // namespace

ErrorNorms error_norms(const CoupledSystem& system, std::span<const double> x,
                       const ExactPair& exact) {
  const auto st = system.split(x);
  ErrorNorms n;
  double dg2 = 0.0;
  if (system.has_3d()) {
    const DgSpace3& space = system.space3();
    const Mesh3& mesh = space.mesh();
    const auto& rule = system.rules().tet_error;
    double l2 = 0.0, semi = 0.0;
    for (Index c = 0; c < mesh.num_cells(); ++c) {
      const Vec3 gh = space.eval_gradient(st.u3, c);
      double uc[4];
      for (int a = 0; a < 4; ++a) uc[a] = st.u3[space.dof(c, a)];
      for (std::size_t q = 0; q < rule.size(); ++q) {
        const auto& r = rule.points[q];
        const Vec3 p = space.map(c, r);
        const double uh = uc[0] * (1.0 - r[0] - r[1] - r[2]) + uc[1] * r[0] + uc[2] * r[1] + uc[3] * r[2];
        const double w = rule.weights[q] * 6.0 * mesh.volumes[c];
        const double ev = exact.u(p) - uh;
        l2 += w * ev * ev;
        semi += w * (exact.grad_u(p) - gh).squaredNorm();
      }
    }
    n.l2_3d = std::sqrt(l2);
    n.h1_semi_3d = std::sqrt(semi);
    n.h1_3d = std::sqrt(l2 + semi);

    // Face jumps of the error; the exact solution is continuous.
    const auto& sigma = system.options().ipdg3.sigma;
    double jumps = 0.0;
    for (const auto& f : mesh.interior_faces) {
      const auto q = face_quadrature(mesh, f.vertices, f.area, system.rules().triangle);
      for (std::size_t k = 0; k < q.points.size(); ++k) {
        const double j = space.eval(st.u3, f.left, q.points[k]) - space.eval(st.u3, f.right, q.points[k]);
        jumps += q.weights[k] * penalty_coefficient(sigma, f.area) * j * j;
      }
    }
    for (const auto& f : mesh.boundary_faces) {
      const auto q = face_quadrature(mesh, f.vertices, f.area, system.rules().triangle);
      for (std::size_t k = 0; k < q.points.size(); ++k) {
        const double j = exact.u(q.points[k]) - space.eval(st.u3, f.owner, q.points[k]);
        jumps += q.weights[k] * penalty_coefficient(sigma, f.area) * j * j;
      }
    }
    dg2 += semi + jumps;

    // Coupling deficit with the scheme's own samples and circle points.
    const auto& avg = system.average();
    const auto pi_u = spmv(avg.pi, st.u3);
    const auto w = coupling_weights(avg, system.graph());
    const VesselGraph& graph = system.graph();
    double coupling = 0.0;
    for (std::size_t r = 0; r < avg.samples.size(); ++r) {
      const auto& smp = avg.samples[r];
      const auto frame = make_frame(graph.tangent(smp.edge));
      const auto pts = circle_points(frame, system.space1().point(smp.edge, smp.s),
                                     graph.edges()[smp.edge].radius, avg.circle_points);
      double ubar = 0.0;
      for (const auto& cp : pts) ubar += exact.u(cp.point);
      ubar /= static_cast<double>(pts.size());
      const double e3 = ubar - pi_u[r];
      const double e1 = exact.u_hat(smp.edge, smp.s) - system.space1().eval(st.u1, smp.edge, smp.cell, smp.xi);
      coupling += w[r] * (e3 - e1) * (e3 - e1);
    }
    n.coupling = std::sqrt(coupling);
    dg2 += coupling;
  }
  const auto ge = graph_errors(system, st.u1, st.multipliers, exact.u_hat, exact.du_hat);
  n.l2_1d = std::sqrt(ge.l2);
  n.h1_1d = std::sqrt(ge.l2 + ge.semi);
  n.dg = std::sqrt(dg2 + ge.semi_a + ge.penalty);
  return n;
}

double dg_norm_network(const CoupledSystem& system, std::span<const double> x,
                       const std::function<double(Index, double)>& u_hat,
                       const std::function<double(Index, double)>& du_hat) {
  const auto st = system.split(x);
  const auto ge = graph_errors(system, st.u1, st.multipliers, u_hat, du_hat);
  return std::sqrt(ge.semi_a + ge.penalty);
}

double flux_residual(const DgSpace1& space, std::span<const double> u1) {
  const VesselGraph& graph = space.graph();
  double worst = 0.0;
  for (Index v = 0; v < graph.num_vertices(); ++v) {
    if (graph.vertex_class(v) != VertexClass::bifurcation) continue;
    double j = 0.0;
    for (const Index e : graph.incident(v)) {
      const auto end = space.end_at(e, v);
      j += space.eval_derivative(u1, e, end.cell, end.xi) * graph.orientation(e, v);
    }
    worst = std::max(worst, std::abs(j));
  }
  return worst;
}

double max_conservation_defect(const CoupledSystem& system, std::span<const double> x) {
  const auto st = system.split(x);
  const auto r = conservation_residual(system.space1(), system.multipliers(),
                                       system.options().ipdg1, st.u1, st.multipliers);
  double worst = 0.0;
  for (const double v : r) worst = std::max(worst, std::abs(v));
  return worst;
}

double eoc(double e_prev, double e, double h_prev, double h) {
  return std::log(e_prev / e) / std::log(h_prev / h);
}

void RateTable::add(std::string level, double h, std::vector<double> errors) {
  if (errors.size() != names_.size())
    throw InvalidArgument("rate table row has " + std::to_string(errors.size()) +
                          " errors, expected " + std::to_string(names_.size()));
  if (!rows_.empty() && !(h < rows_.back().h))
    throw InvalidArgument("mesh size must decrease strictly between rate table rows");
  RateRow row{std::move(level), h, std::move(errors), {}};
  for (std::size_t i = 0; i < row.errors.size(); ++i)
    row.rates.push_back(rows_.empty() ? std::numeric_limits<double>::quiet_NaN()
                                      : eoc(rows_.back().errors[i], row.errors[i], rows_.back().h, h));
  rows_.push_back(std::move(row));
}

std::size_t RateTable::column(const std::string& name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw InvalidArgument("no rate column named " + name);
  return static_cast<std::size_t>(it - names_.begin());
}

std::string RateTable::to_csv() const {
  std::ostringstream out;
  out << "level,h";
  for (const auto& n : names_) out << ',' << n << ',' << n << "_rate";
  out << '\n';
  char buf[64];
  for (const auto& row : rows_) {
    std::snprintf(buf, sizeof buf, "%.6e", row.h);
    out << row.level << ',' << buf;
    for (std::size_t i = 0; i < row.errors.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.6e", row.errors[i]);
      out << ',' << buf << ',';
      if (!std::isnan(row.rates[i])) {
        std::snprintf(buf, sizeof buf, "%.4f", row.rates[i]);
        out << buf;
      }
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace dg3d1d
