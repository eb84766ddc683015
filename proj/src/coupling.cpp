#include "dg3d1d/coupling.hpp"

#include <sstream>

#include "dg3d1d/errors.hpp"

namespace dg3d1d {

std::vector<LineSample> line_samples(const DgSpace1& space, const IntervalRule& rule) {
  std::vector<LineSample> out;
  for (const auto& mesh : space.meshes())
    for (int c = 0; c < mesh.cells; ++c)
      for (std::size_t q = 0; q < rule.size(); ++q) {
        const double xi = rule.points[q][0];
        out.push_back({mesh.edge, c, xi, (c + xi) * mesh.h(), rule.weights[q] * mesh.h()});
      }
  return out;
}

AverageOperator build_average_operator(const DgSpace3& space3, const PointLocator& locator,
                                       const DgSpace1& space1, const IntervalRule& rule, int m,
                                       AverageSampling sampling) {
  const VesselGraph& graph = space1.graph();
  AverageOperator avg;
  avg.samples = line_samples(space1, rule);
  avg.circle_points = m;
  avg.sampling = sampling;
  std::vector<EdgeFrame> frames;
  for (Index e = 0; e < graph.num_edges(); ++e) frames.push_back(make_frame(graph.tangent(e)));

  // Circle average of the 3D basis at arclength s, scaled by `scale`.
  std::vector<Triplet> trip;
  trip.reserve(avg.samples.size() * static_cast<std::size_t>(4 * m));
  auto add_circle = [&](Index row, Index edge, double s, double scale) {
    const double radius = graph.edges()[edge].radius;
    for (const auto& cp : circle_points(frames[edge], space1.point(edge, s), radius, m)) {
      PointLocation loc;
      try {
        loc = locator.locate(cp.point);
      } catch (const GeometryError&) {
        std::ostringstream msg;
        msg << "vessel wall of edge " << edge << " leaves the domain at s = " << s << " (point "
            << cp.point.x() << ", " << cp.point.y() << ", " << cp.point.z() << ")";
        throw GeometryError(msg.str());
      }
      for (int a = 0; a < 4; ++a)
        trip.push_back({row, space3.dof(loc.cell, a), scale * loc.barycentric[a] / m});
    }
  };
  for (std::size_t r = 0; r < avg.samples.size(); ++r) {
    const auto& smp = avg.samples[r];
    const auto row = static_cast<Index>(r);
    if (sampling == AverageSampling::gauss) {
      add_circle(row, smp.edge, smp.s, 1.0);
      continue;
    }
    // Lagrange interpolation of the circle averages at the cell nodes.
    const auto& mesh = space1.meshes()[smp.edge];
    const auto phi = lagrange_values(space1.degree(), smp.xi);
    for (int a = 0; a <= space1.degree(); ++a)
      add_circle(row, smp.edge, (smp.cell + static_cast<double>(a) / space1.degree()) * mesh.h(),
                 phi[a]);
  }
  avg.pi = SparseMatrix::from_triplets(static_cast<Index>(avg.samples.size()), space3.num_dofs(),
                                       std::move(trip));
  return avg;
}

SparseMatrix sample_operator_1d(const DgSpace1& space1, const AverageOperator& avg) {
  std::vector<Triplet> trip;
  for (std::size_t r = 0; r < avg.samples.size(); ++r) {
    const auto& smp = avg.samples[r];
    const auto phi = lagrange_values(space1.degree(), smp.xi);
    for (int a = 0; a <= space1.degree(); ++a)
      trip.push_back({static_cast<Index>(r), space1.dof(smp.edge, smp.cell, a), phi[a]});
  }
  return SparseMatrix::from_triplets(static_cast<Index>(avg.samples.size()), space1.num_dofs(),
                                     std::move(trip));
}

std::vector<double> coupling_weights(const AverageOperator& avg, const VesselGraph& graph) {
  std::vector<double> w;
  w.reserve(avg.samples.size());
  for (const auto& smp : avg.samples) {
    const auto& e = graph.edges()[smp.edge];
    w.push_back(smp.weight * e.xi * e.perimeter());
  }
  return w;
}

CouplingBlocks assemble_coupling(const AverageOperator& avg, const DgSpace3& space3,
                                 const DgSpace1& space1) {
  const SparseMatrix phi = sample_operator_1d(space1, avg);
  const auto w = coupling_weights(avg, space1.graph());
  const Index n3 = space3.num_dofs();
  const Index n1 = space1.num_dofs();
  std::vector<Triplet> oo, ol, lo, ll;
  const auto& p = avg.pi;
  for (Index r = 0; r < p.rows(); ++r) {
    const double wr = w[r];
    if (wr == 0.0) continue;
    const auto pc = p.row_cols(r);
    const auto pv = p.row_values(r);
    const auto fc = phi.row_cols(r);
    const auto fv = phi.row_values(r);
    for (std::size_t i = 0; i < pc.size(); ++i) {
      for (std::size_t j = 0; j < pc.size(); ++j) oo.push_back({pc[i], pc[j], wr * pv[i] * pv[j]});
      for (std::size_t j = 0; j < fc.size(); ++j) {
        ol.push_back({pc[i], fc[j], -wr * pv[i] * fv[j]});
        lo.push_back({fc[j], pc[i], -wr * pv[i] * fv[j]});
      }
    }
    for (std::size_t i = 0; i < fc.size(); ++i)
      for (std::size_t j = 0; j < fc.size(); ++j) ll.push_back({fc[i], fc[j], wr * fv[i] * fv[j]});
  }
  return {SparseMatrix::from_triplets(n3, n3, std::move(oo)),
          SparseMatrix::from_triplets(n3, n1, std::move(ol)),
          SparseMatrix::from_triplets(n1, n3, std::move(lo)),
          SparseMatrix::from_triplets(n1, n1, std::move(ll))};
}

}  // namespace dg3d1d
