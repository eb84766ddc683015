#pragma once

#include <array>
#include <vector>

namespace dg3d1d {

/// Quadrature rule on a reference simplex of dimension Dim:
/// interval [0,1], triangle {x,y >= 0, x+y <= 1}, tetrahedron {x,y,z >= 0, x+y+z <= 1}.
template <int Dim>
struct QuadRule {
  std::vector<std::array<double, Dim>> points;
  std::vector<double> weights;
  int degree = 0;

  [[nodiscard]] std::size_t size() const { return weights.size(); }
};

using IntervalRule = QuadRule<1>;
using TriangleRule = QuadRule<2>;
using TetRule = QuadRule<3>;

/// n-point Gauss-Legendre rule on [0, 1] (degree 2n - 1).
IntervalRule gauss_legendre(int n);
/// Rules exact for polynomials up to `degree`. Degree <= 2 uses the classic
/// 3-point (triangle) and 4-point (tetrahedron) rules; higher degrees use
/// collapsed Gauss-Legendre products.
TriangleRule triangle_rule(int degree);
TetRule tet_rule(int degree);

/// Largest relative error over all monomials of total degree <= rule.degree.
template <int Dim>
double exactness_error(const QuadRule<Dim>& rule);

/// Rules used by assembly and error evaluation. Construction checks every
/// rule against exact monomial integrals and throws std::logic_error on a
/// mismatch above 1e-13.
struct QuadRules {
  TetRule tet;              ///< degree 2, assembly
  TriangleRule triangle;    ///< degree 2, face terms
  IntervalRule interval;    ///< k2 + 1 Gauss points, 1D assembly and coupling
  TetRule tet_error;        ///< degree 5, error norms and projections
  IntervalRule interval_error;  ///< 6 Gauss points, 1D error norms and loads
};

QuadRules quad_rules(int degree_1d);

}  // namespace dg3d1d
