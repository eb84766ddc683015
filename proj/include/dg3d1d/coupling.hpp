#pragma once

#include <vector>

#include "dg3d1d/quadrature.hpp"
#include "dg3d1d/spaces.hpp"
#include "dg3d1d/sparse.hpp"

namespace dg3d1d {

/// One Gauss point of the 1D quadrature along the graph.
struct LineSample {
  Index edge;
  int cell;
  double xi;      ///< reference coordinate in the cell
  double s;       ///< arclength on the edge
  double weight;  ///< Gauss weight times cell length
};

/// Where circle averages are taken: at each Gauss sample directly, or at
/// the Lagrange nodes of the 1D cell and interpolated to the samples.
enum class AverageSampling { gauss, nodal };

/// Lateral average of 3D fields on the vessel walls. Row r of `pi` maps 3D
/// coefficients to the M-point circle average at samples[r].
struct AverageOperator {
  SparseMatrix pi;
  std::vector<LineSample> samples;
  int circle_points = 0;
  AverageSampling sampling = AverageSampling::gauss;
};

/// Gauss samples of every cell of every edge, edge-major.
std::vector<LineSample> line_samples(const DgSpace1& space, const IntervalRule& rule);

/// Throws GeometryError naming the edge and arclength when a circle point
/// falls outside the 3D box.
AverageOperator build_average_operator(const DgSpace3& space3, const PointLocator& locator,
                                       const DgSpace1& space1, const IntervalRule& rule, int m,
                                       AverageSampling sampling = AverageSampling::gauss);

/// Trace matrix: rows as in the average operator, columns 1D DOFs.
SparseMatrix sample_operator_1d(const DgSpace1& space1, const AverageOperator& avg);

/// Blocks of b(u - u^, v - v^) = sum_samples w xi P (Pi u - u^)(Pi v - v^).
struct CouplingBlocks {
  SparseMatrix omega_omega;
  SparseMatrix omega_lambda;
  SparseMatrix lambda_omega;
  SparseMatrix lambda_lambda;
};

CouplingBlocks assemble_coupling(const AverageOperator& avg, const DgSpace3& space3,
                                 const DgSpace1& space1);

/// Quadrature weights w xi_e P_e of the samples.
std::vector<double> coupling_weights(const AverageOperator& avg, const VesselGraph& graph);

}  // namespace dg3d1d
