#include "dg3d1d/assembly1d.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <sstream>

#include "dg3d1d/errors.hpp"

namespace dg3d1d {

void Ipdg1Params::validate() const {
  if (epsilon < -1 || epsilon > 1) throw InvalidArgument("1D epsilon must be -1, 0 or 1");
  if (!(sigma_lambda > 0.0)) throw InvalidArgument("sigma_lambda must be positive");
  if (!(sigma_v > 0.0)) throw InvalidArgument("sigma_v must be positive");
}

std::optional<std::string> Ipdg1Params::sigma_v_warning(const VesselGraph& graph) const {
  double a_max = 0.0;
  for (const auto& e : graph.edges()) a_max = std::max(a_max, e.area());
  if (sigma_v >= 4.0 * a_max) return std::nullopt;
  std::ostringstream msg;
  msg << "sigma_v = " << sigma_v << " is below 4 max A_e = " << 4.0 * a_max;
  return msg.str();
}

MultiplierSpace::MultiplierSpace(const VesselGraph& graph)
    : index_(static_cast<std::size_t>(graph.num_vertices()), -1) {
  for (Index v = 0; v < graph.num_vertices(); ++v) {
    if (graph.vertex_class(v) == VertexClass::boundary) continue;
    index_[v] = static_cast<Index>(vertices_.size());
    vertices_.push_back(v);
  }
}

namespace {

// Trace data of edge e at one of its end vertices.
struct EndTrace {
  std::vector<Index> dofs;
  std::vector<double> values;
  std::vector<double> derivatives;  // d/ds
  double normal;                    // n_e(v)
  double h;
  double area;
};

EndTrace end_trace(const DgSpace1& space, Index e, Index v) {
  const auto end = space.end_at(e, v);
  const auto& mesh = space.meshes()[e];
  EndTrace t;
  t.values = lagrange_values(space.degree(), end.xi);
  t.derivatives = lagrange_derivatives(space.degree(), end.xi);
  for (auto& d : t.derivatives) d /= mesh.h();
  for (int a = 0; a <= space.degree(); ++a) t.dofs.push_back(space.dof(e, end.cell, a));
  t.normal = space.graph().orientation(e, v);
  t.h = mesh.h();
  t.area = space.graph().edges()[e].area();
  return t;
}

// Adds A n (j d^T + d j^T) + sigma/h j j^T over `dofs`.
void add_vertex_block(std::vector<Triplet>& trip, const std::vector<Index>& dofs,
                      const std::vector<double>& jump, const std::vector<double>& der,
                      double a_n, double penalty) {
  for (std::size_t i = 0; i < dofs.size(); ++i)
    for (std::size_t j = 0; j < dofs.size(); ++j)
      trip.push_back({dofs[i], dofs[j],
                      a_n * (jump[i] * der[j] + der[i] * jump[j]) + penalty * jump[i] * jump[j]});
}

}  // namespace

SparseMatrix assemble_a_lambda(const DgSpace1& space, const Ipdg1Params& params,
                               const IntervalRule& rule) {
  params.validate();
  const int k = space.degree();
  const int nloc = k + 1;
  const double eps = params.epsilon;
  std::vector<Triplet> trip;
  for (const auto& mesh : space.meshes()) {
    const double area = space.graph().edges()[mesh.edge].area();
    const double h = mesh.h();
    // Cell stiffness, identical on every cell of the edge.
    std::vector<double> stiff(static_cast<std::size_t>(nloc * nloc), 0.0);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const auto d = lagrange_derivatives(k, rule.points[q][0]);
      for (int i = 0; i < nloc; ++i)
        for (int j = 0; j < nloc; ++j) stiff[i * nloc + j] += rule.weights[q] * area * d[i] * d[j] / h;
    }
    for (int c = 0; c < mesh.cells; ++c)
      for (int i = 0; i < nloc; ++i)
        for (int j = 0; j < nloc; ++j)
          trip.push_back({space.dof(mesh.edge, c, i), space.dof(mesh.edge, c, j), stiff[i * nloc + j]});

    // Interior nodes between cell c-1 (left) and c (right).
    const auto vl = lagrange_values(k, 1.0);
    const auto vr = lagrange_values(k, 0.0);
    const auto dl = lagrange_derivatives(k, 1.0);
    const auto dr = lagrange_derivatives(k, 0.0);
    std::vector<double> jump(static_cast<std::size_t>(2 * nloc));
    std::vector<double> flux(static_cast<std::size_t>(2 * nloc));
    for (int a = 0; a < nloc; ++a) {
      jump[a] = vl[a];
      jump[a + nloc] = -vr[a];
      flux[a] = 0.5 * area * dl[a] / h;
      flux[a + nloc] = 0.5 * area * dr[a] / h;
    }
    const double penalty = params.sigma_lambda / h;
    for (int c = 1; c < mesh.cells; ++c) {
      for (int i = 0; i < 2 * nloc; ++i) {
        const Index row = i < nloc ? space.dof(mesh.edge, c - 1, i) : space.dof(mesh.edge, c, i - nloc);
        for (int j = 0; j < 2 * nloc; ++j) {
          const Index col = j < nloc ? space.dof(mesh.edge, c - 1, j) : space.dof(mesh.edge, c, j - nloc);
          trip.push_back({row, col, -flux[j] * jump[i] + eps * flux[i] * jump[j] + penalty * jump[i] * jump[j]});
        }
      }
    }
  }
  return SparseMatrix::from_triplets(space.num_dofs(), space.num_dofs(), std::move(trip));
}

SparseMatrix assemble_b_v(const DgSpace1& space, const MultiplierSpace& multipliers,
                          const Ipdg1Params& params) {
  params.validate();
  const Index n1 = space.num_dofs();
  const Index n = n1 + multipliers.size();
  std::vector<Triplet> trip;
  for (Index m = 0; m < multipliers.size(); ++m) {
    const Index v = multipliers.vertices()[m];
    for (const Index e : space.graph().incident(v)) {
      auto t = end_trace(space, e, v);
      t.dofs.push_back(n1 + m);
      t.values.push_back(-1.0);
      t.derivatives.push_back(0.0);
      add_vertex_block(trip, t.dofs, t.values, t.derivatives, t.area * t.normal,
                       params.sigma_v / t.h);
    }
  }
  return SparseMatrix::from_triplets(n, n, std::move(trip));
}

SparseMatrix assemble_mass_1d(const DgSpace1& space, const IntervalRule& rule) {
  const int nloc = space.dofs_per_cell();
  std::vector<Triplet> trip;
  for (const auto& mesh : space.meshes()) {
    const double scale = space.graph().edges()[mesh.edge].area() * mesh.h();
    std::vector<double> local(static_cast<std::size_t>(nloc * nloc), 0.0);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const auto phi = lagrange_values(space.degree(), rule.points[q][0]);
      for (int i = 0; i < nloc; ++i)
        for (int j = 0; j < nloc; ++j) local[i * nloc + j] += rule.weights[q] * scale * phi[i] * phi[j];
    }
    for (int c = 0; c < mesh.cells; ++c)
      for (int i = 0; i < nloc; ++i)
        for (int j = 0; j < nloc; ++j)
          trip.push_back({space.dof(mesh.edge, c, i), space.dof(mesh.edge, c, j), local[i * nloc + j]});
  }
  return SparseMatrix::from_triplets(space.num_dofs(), space.num_dofs(), std::move(trip));
}

std::vector<double> assemble_load_1d(const DgSpace1& space, const ScalarField1& f,
                                     const IntervalRule& rule) {
  std::vector<double> b(static_cast<std::size_t>(space.num_dofs()), 0.0);
  for (const auto& mesh : space.meshes()) {
    const double scale = space.graph().edges()[mesh.edge].area() * mesh.h();
    for (int c = 0; c < mesh.cells; ++c)
      for (std::size_t q = 0; q < rule.size(); ++q) {
        const double xi = rule.points[q][0];
        const double w = rule.weights[q] * scale * f(mesh.edge, (c + xi) * mesh.h());
        const auto phi = lagrange_values(space.degree(), xi);
        for (int a = 0; a <= space.degree(); ++a) b[space.dof(mesh.edge, c, a)] += w * phi[a];
      }
  }
  return b;
}

SparseMatrix dirichlet_vertex_matrix(const DgSpace1& space, const Ipdg1Params& params,
                                     const std::vector<Index>& vertices) {
  params.validate();
  std::vector<Triplet> trip;
  for (const Index v : vertices)
    for (const Index e : space.graph().incident(v)) {
      const auto t = end_trace(space, e, v);
      add_vertex_block(trip, t.dofs, t.values, t.derivatives, t.area * t.normal,
                       params.sigma_v / t.h);
    }
  return SparseMatrix::from_triplets(space.num_dofs(), space.num_dofs(), std::move(trip));
}

std::vector<double> dirichlet_vertex_rhs(const DgSpace1& space, const Ipdg1Params& params,
                                         const VertexDirichlet& data) {
  if (data.vertices.size() != data.values.size())
    throw InvalidArgument("Dirichlet vertices and values differ in length");
  std::vector<double> b(static_cast<std::size_t>(space.num_dofs()), 0.0);
  for (std::size_t i = 0; i < data.vertices.size(); ++i) {
    const double g = data.values[i];
    for (const Index e : space.graph().incident(data.vertices[i])) {
      const auto t = end_trace(space, e, data.vertices[i]);
      for (std::size_t a = 0; a < t.dofs.size(); ++a)
        b[t.dofs[a]] += g * (t.area * t.normal * t.derivatives[a] + params.sigma_v / t.h * t.values[a]);
    }
  }
  return b;
}

std::vector<double> conservation_residual(const DgSpace1& space,
                                          const MultiplierSpace& multipliers,
                                          const Ipdg1Params& params, std::span<const double> u1,
                                          std::span<const double> multiplier_values) {
  std::vector<double> r(static_cast<std::size_t>(multipliers.size()), 0.0);
  for (Index m = 0; m < multipliers.size(); ++m) {
    const Index v = multipliers.vertices()[m];
    for (const Index e : space.graph().incident(v)) {
      const auto t = end_trace(space, e, v);
      double val = 0.0, der = 0.0;
      for (std::size_t a = 0; a < t.dofs.size(); ++a) {
        val += u1[t.dofs[a]] * t.values[a];
        der += u1[t.dofs[a]] * t.derivatives[a];
      }
      r[m] += t.area * der * t.normal + params.sigma_v / t.h * (val - multiplier_values[m]);
    }
  }
  return r;
}

std::vector<double> l2_project_1d(const DgSpace1& space, const ScalarField1& u,
                                  const IntervalRule& rule) {
  const int nloc = space.dofs_per_cell();
  std::vector<double> x(static_cast<std::size_t>(space.num_dofs()), 0.0);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(nloc, nloc);
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const auto phi = lagrange_values(space.degree(), rule.points[q][0]);
    for (int i = 0; i < nloc; ++i)
      for (int j = 0; j < nloc; ++j) m(i, j) += rule.weights[q] * phi[i] * phi[j];
  }
  const Eigen::LLT<Eigen::MatrixXd> llt(m);
  for (const auto& mesh : space.meshes())
    for (int c = 0; c < mesh.cells; ++c) {
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nloc);
      for (std::size_t q = 0; q < rule.size(); ++q) {
        const double xi = rule.points[q][0];
        const auto phi = lagrange_values(space.degree(), xi);
        const double w = rule.weights[q] * u(mesh.edge, (c + xi) * mesh.h());
        for (int i = 0; i < nloc; ++i) rhs[i] += w * phi[i];
      }
      const Eigen::VectorXd sol = llt.solve(rhs);
      for (int a = 0; a < nloc; ++a) x[space.dof(mesh.edge, c, a)] = sol[a];
    }
  return x;
}

}  // namespace dg3d1d
