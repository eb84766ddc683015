#pragma once

#include <functional>
#include <vector>

#include "dg3d1d/quadrature.hpp"
#include "dg3d1d/spaces.hpp"
#include "dg3d1d/sparse.hpp"

namespace dg3d1d {

using ScalarField3 = std::function<double(const Vec3&)>;

/// Interior penalty parameters for the 3D form. epsilon = -1, 0, +1 selects
/// the symmetric, incomplete and non-symmetric variants.
struct IpdgParams {
  int epsilon = -1;
  double sigma = 30.0;
  /// Minimum sigma accepted when epsilon != +1.
  double coercivity_floor = 10.0;

  /// Throws InvalidArgument on an unknown epsilon, sigma <= 0, or sigma
  /// below the floor for epsilon != +1.
  void validate() const;
};

/// Selects terms of a_h, mainly for testing individual contributions.
enum AhTerms : unsigned {
  kVolume = 1u,
  kConsistency = 2u,  ///< -{grad u . n}[v]
  kAdjoint = 4u,      ///< epsilon {grad v . n}[u]
  kPenalty = 8u,      ///< sigma / |F|^(1/2) [u][v]
  kAllTerms = 15u,
};

/// sigma / |F|^(1/2).
double penalty_coefficient(double sigma, double face_area);

/// Physical quadrature points and weights on a triangle face.
struct FaceQuadrature {
  std::vector<Vec3> points;
  std::vector<double> weights;
};
FaceQuadrature face_quadrature(const Mesh3& mesh, const std::array<Index, 3>& vertices,
                               double area, const TriangleRule& rule);

/// Interior penalty form over all cells, interior faces and boundary faces.
/// On boundary faces [v] = {v} = v restricted to the owner cell.
SparseMatrix assemble_a_h(const DgSpace3& space, const IpdgParams& params,
                          const TriangleRule& face_rule, unsigned terms = kAllTerms);

SparseMatrix assemble_mass_3d(const DgSpace3& space, const TetRule& rule);
std::vector<double> assemble_load_3d(const DgSpace3& space, const ScalarField3& f,
                                     const TetRule& rule);

/// Weak Dirichlet data g on the box boundary:
/// epsilon * int_F g grad v . n + sigma/|F|^(1/2) int_F g v.
std::vector<double> dirichlet_rhs(const DgSpace3& space, const IpdgParams& params,
                                  const ScalarField3& g, const TriangleRule& face_rule);

/// L2 projection onto the broken P1 space (cell-local solves).
std::vector<double> l2_project_3d(const DgSpace3& space, const ScalarField3& u,
                                  const TetRule& rule);

}  // namespace dg3d1d
