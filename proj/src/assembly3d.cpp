#include "dg3d1d/assembly3d.hpp"

#include <cmath>
#include <sstream>

#include "dg3d1d/errors.hpp"

namespace dg3d1d {

void IpdgParams::validate() const {
  if (epsilon < -1 || epsilon > 1) throw InvalidArgument("epsilon must be -1, 0 or 1");
  if (!(sigma > 0.0)) throw InvalidArgument("penalty sigma must be positive");
  if (epsilon != 1 && sigma < coercivity_floor) {
    std::ostringstream msg;
    msg << "penalty sigma = " << sigma << " is below the coercivity floor " << coercivity_floor
        << " for epsilon = " << epsilon;
    throw InvalidArgument(msg.str());
  }
}

double penalty_coefficient(double sigma, double face_area) { return sigma / std::sqrt(face_area); }

FaceQuadrature face_quadrature(const Mesh3& mesh, const std::array<Index, 3>& vertices,
                               double area, const TriangleRule& rule) {
  const Vec3& p0 = mesh.vertices[vertices[0]];
  const Vec3 d1 = mesh.vertices[vertices[1]] - p0;
  const Vec3 d2 = mesh.vertices[vertices[2]] - p0;
  FaceQuadrature q;
  q.points.reserve(rule.size());
  q.weights.reserve(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) {
    q.points.push_back(p0 + rule.points[i][0] * d1 + rule.points[i][1] * d2);
    q.weights.push_back(rule.weights[i] * 2.0 * area);
  }
  return q;
}

SparseMatrix assemble_a_h(const DgSpace3& space, const IpdgParams& params,
                          const TriangleRule& face_rule, unsigned terms) {
  params.validate();
  const Mesh3& mesh = space.mesh();
  const double eps = params.epsilon;
  std::vector<Triplet> trip;
  trip.reserve(static_cast<std::size_t>(16 * mesh.num_cells() + 64 * mesh.interior_faces.size() +
                                        16 * mesh.boundary_faces.size()));

  if (terms & kVolume) {
    for (Index c = 0; c < mesh.num_cells(); ++c) {
      const auto g = space.gradients(c);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          trip.push_back({space.dof(c, i), space.dof(c, j), mesh.volumes[c] * g[i].dot(g[j])});
    }
  }

  const bool cons = terms & kConsistency;
  const bool adj = terms & kAdjoint;
  const bool pen = terms & kPenalty;
  if (!(cons || adj || pen)) return SparseMatrix::from_triplets(space.num_dofs(), space.num_dofs(), std::move(trip));

  // Local matrix over `n` DOFs with jump values J and normal-flux averages G
  // at each quadrature point.
  auto add_face = [&](int n, const std::array<Index, 8>& dofs, const FaceQuadrature& q,
                      double penalty, auto&& jumps, const std::array<double, 8>& flux) {
    double local[8][8] = {};
    for (std::size_t k = 0; k < q.points.size(); ++k) {
      const auto jv = jumps(q.points[k]);
      const double w = q.weights[k];
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double v = 0.0;
          if (cons) v -= flux[j] * jv[i];
          if (adj) v += eps * flux[i] * jv[j];
          if (pen) v += penalty * jv[i] * jv[j];
          local[i][j] += w * v;
        }
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) trip.push_back({dofs[i], dofs[j], local[i][j]});
  };

  for (const auto& f : mesh.interior_faces) {
    const auto q = face_quadrature(mesh, f.vertices, f.area, face_rule);
    const auto g1 = space.gradients(f.left);
    const auto g2 = space.gradients(f.right);
    std::array<Index, 8> dofs{};
    std::array<double, 8> flux{};
    for (int a = 0; a < 4; ++a) {
      dofs[a] = space.dof(f.left, a);
      dofs[a + 4] = space.dof(f.right, a);
      flux[a] = 0.5 * g1[a].dot(f.normal);
      flux[a + 4] = 0.5 * g2[a].dot(f.normal);
    }
    auto jumps = [&](const Vec3& p) {
      const auto l1 = mesh.barycentric(f.left, p);
      const auto l2 = mesh.barycentric(f.right, p);
      std::array<double, 8> j{};
      for (int a = 0; a < 4; ++a) {
        j[a] = l1[a];
        j[a + 4] = -l2[a];
      }
      return j;
    };
    add_face(8, dofs, q, penalty_coefficient(params.sigma, f.area), jumps, flux);
  }

  for (const auto& f : mesh.boundary_faces) {
    const auto q = face_quadrature(mesh, f.vertices, f.area, face_rule);
    const auto g = space.gradients(f.owner);
    std::array<Index, 8> dofs{};
    std::array<double, 8> flux{};
    for (int a = 0; a < 4; ++a) {
      dofs[a] = space.dof(f.owner, a);
      flux[a] = g[a].dot(f.normal);
    }
    auto jumps = [&](const Vec3& p) {
      const auto l = mesh.barycentric(f.owner, p);
      std::array<double, 8> j{};
      for (int a = 0; a < 4; ++a) j[a] = l[a];
      return j;
    };
    add_face(4, dofs, q, penalty_coefficient(params.sigma, f.area), jumps, flux);
  }
  return SparseMatrix::from_triplets(space.num_dofs(), space.num_dofs(), std::move(trip));
}

SparseMatrix assemble_mass_3d(const DgSpace3& space, const TetRule& rule) {
  const Mesh3& mesh = space.mesh();
  std::vector<Triplet> trip;
  trip.reserve(static_cast<std::size_t>(16 * mesh.num_cells()));
  for (Index c = 0; c < mesh.num_cells(); ++c) {
    double local[4][4] = {};
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const auto& r = rule.points[q];
      const std::array<double, 4> phi{1.0 - r[0] - r[1] - r[2], r[0], r[1], r[2]};
      const double w = rule.weights[q] * 6.0 * mesh.volumes[c];
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) local[i][j] += w * phi[i] * phi[j];
    }
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) trip.push_back({space.dof(c, i), space.dof(c, j), local[i][j]});
  }
  return SparseMatrix::from_triplets(space.num_dofs(), space.num_dofs(), std::move(trip));
}

std::vector<double> assemble_load_3d(const DgSpace3& space, const ScalarField3& f,
                                     const TetRule& rule) {
  const Mesh3& mesh = space.mesh();
  std::vector<double> b(static_cast<std::size_t>(space.num_dofs()), 0.0);
  for (Index c = 0; c < mesh.num_cells(); ++c) {
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const auto& r = rule.points[q];
      const std::array<double, 4> phi{1.0 - r[0] - r[1] - r[2], r[0], r[1], r[2]};
      const double w = rule.weights[q] * 6.0 * mesh.volumes[c] * f(space.map(c, r));
      for (int i = 0; i < 4; ++i) b[space.dof(c, i)] += w * phi[i];
    }
  }
  return b;
}

std::vector<double> dirichlet_rhs(const DgSpace3& space, const IpdgParams& params,
                                  const ScalarField3& g, const TriangleRule& face_rule) {
  const Mesh3& mesh = space.mesh();
  std::vector<double> b(static_cast<std::size_t>(space.num_dofs()), 0.0);
  for (const auto& f : mesh.boundary_faces) {
    const auto q = face_quadrature(mesh, f.vertices, f.area, face_rule);
    const auto grad = space.gradients(f.owner);
    const double pen = penalty_coefficient(params.sigma, f.area);
    for (std::size_t k = 0; k < q.points.size(); ++k) {
      const double gw = g(q.points[k]) * q.weights[k];
      if (gw == 0.0) continue;
      const auto l = mesh.barycentric(f.owner, q.points[k]);
      for (int a = 0; a < 4; ++a)
        b[space.dof(f.owner, a)] += gw * (params.epsilon * grad[a].dot(f.normal) + pen * l[a]);
    }
  }
  return b;
}

std::vector<double> l2_project_3d(const DgSpace3& space, const ScalarField3& u,
                                  const TetRule& rule) {
  const Mesh3& mesh = space.mesh();
  std::vector<double> x(static_cast<std::size_t>(space.num_dofs()), 0.0);
  for (Index c = 0; c < mesh.num_cells(); ++c) {
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    Eigen::Vector4d rhs = Eigen::Vector4d::Zero();
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const auto& r = rule.points[q];
      const Eigen::Vector4d phi(1.0 - r[0] - r[1] - r[2], r[0], r[1], r[2]);
      const double w = rule.weights[q] * 6.0 * mesh.volumes[c];
      m += w * phi * phi.transpose();
      rhs += w * u(space.map(c, r)) * phi;
    }
    const Eigen::Vector4d sol = m.llt().solve(rhs);
    for (int a = 0; a < 4; ++a) x[space.dof(c, a)] = sol[a];
  }
  return x;
}

}  // namespace dg3d1d
