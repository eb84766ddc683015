#include "dg3d1d/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace dg3d1d {

namespace {

double factorial(int n) { return std::tgamma(n + 1.0); }

// Integral of x^a y^b z^c over the reference simplex of dimension dim.
double simplex_monomial(int dim, std::array<int, 3> e) {
  double num = 1.0;
  int total = 0;
  for (int d = 0; d < dim; ++d) {
    num *= factorial(e[d]);
    total += e[d];
  }
  return num / factorial(total + dim);
}

}  // namespace

IntervalRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("Gauss rule needs at least one point");
  // Returns (P_n(x), P_n'(x)) by the three-term recurrence.
  auto legendre = [n](double x) {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    return std::pair{p1, n * (x * p1 - p0) / (x * x - 1.0)};
  };
  IntervalRule rule;
  rule.degree = 2 * n - 1;
  rule.points.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    // Roots of P_n in descending order; map x -> (1 - x)/2 gives ascending points.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre(x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre(x).second;
    rule.points[i] = {0.5 * (1.0 - x)};
    rule.weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

TriangleRule triangle_rule(int degree) {
  TriangleRule rule;
  if (degree <= 2) {
    rule.degree = 2;
    rule.points = {{1.0 / 6.0, 1.0 / 6.0}, {2.0 / 3.0, 1.0 / 6.0}, {1.0 / 6.0, 2.0 / 3.0}};
    rule.weights = {1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0};
    return rule;
  }
  // x = a (1 - b), y = b, Jacobian (1 - b).
  const auto g = gauss_legendre((degree + 2 + 1) / 2);
  rule.degree = degree;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) {
      const double a = g.points[i][0], b = g.points[j][0];
      rule.points.push_back({a * (1.0 - b), b});
      rule.weights.push_back(g.weights[i] * g.weights[j] * (1.0 - b));
    }
  return rule;
}

TetRule tet_rule(int degree) {
  TetRule rule;
  if (degree <= 2) {
    const double a = (5.0 + 3.0 * std::sqrt(5.0)) / 20.0;
    const double b = (5.0 - std::sqrt(5.0)) / 20.0;
    rule.degree = 2;
    rule.points = {{b, b, b}, {a, b, b}, {b, a, b}, {b, b, a}};
    rule.weights.assign(4, 1.0 / 24.0);
    return rule;
  }
  // x = a (1 - b)(1 - c), y = b (1 - c), z = c, Jacobian (1 - b)(1 - c)^2.
  const auto g = gauss_legendre((degree + 3 + 1) / 2);
  rule.degree = degree;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j)
      for (std::size_t k = 0; k < g.size(); ++k) {
        const double a = g.points[i][0], b = g.points[j][0], c = g.points[k][0];
        rule.points.push_back({a * (1.0 - b) * (1.0 - c), b * (1.0 - c), c});
        rule.weights.push_back(g.weights[i] * g.weights[j] * g.weights[k] * (1.0 - b) *
                               (1.0 - c) * (1.0 - c));
      }
  return rule;
}

template <int Dim>
double exactness_error(const QuadRule<Dim>& rule) {
  double worst = 0.0;
  const int p = rule.degree;
  for (int a = 0; a <= p; ++a)
    for (int b = 0; b <= (Dim > 1 ? p - a : 0); ++b)
      for (int c = 0; c <= (Dim > 2 ? p - a - b : 0); ++c) {
        const std::array<int, 3> e{a, b, c};
        double q = 0.0;
        for (std::size_t i = 0; i < rule.size(); ++i) {
          double m = rule.weights[i];
          for (int d = 0; d < Dim; ++d) m *= std::pow(rule.points[i][d], e[d]);
          q += m;
        }
        const double exact = simplex_monomial(Dim, e);
        worst = std::max(worst, std::abs(q - exact) / exact);
      }
  return worst;
}

template double exactness_error<1>(const QuadRule<1>&);
template double exactness_error<2>(const QuadRule<2>&);
template double exactness_error<3>(const QuadRule<3>&);

QuadRules quad_rules(int degree_1d) {
  if (degree_1d < 1 || degree_1d > 2) throw std::invalid_argument("1D degree must be 1 or 2");
  QuadRules r{tet_rule(2), triangle_rule(2), gauss_legendre(degree_1d + 1), tet_rule(5),
              gauss_legendre(6)};
  auto check = [](double err, const char* name) {
    if (err > 1e-13)
      throw std::logic_error(std::string("quadrature self-test failed for ") + name + ": " +
                             std::to_string(err));
  };
  check(exactness_error(r.tet), "tet");
  check(exactness_error(r.triangle), "triangle");
  check(exactness_error(r.interval), "interval");
  check(exactness_error(r.tet_error), "tet_error");
  check(exactness_error(r.interval_error), "interval_error");
  return r;
}

}  // namespace dg3d1d
