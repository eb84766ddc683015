#include "doctest.h"

#include <Eigen/Dense>

#include <cmath>
#include <fstream>
#include <random>

#include "dg3d1d/cg.hpp"
#include "dg3d1d/sparse.hpp"
#include "scratch.hpp"

using namespace dg3d1d;

namespace {

SparseMatrix random_sparse(int rows, int cols, double fill, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> p(0.0, 1.0);
  std::vector<Triplet> t;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      if (p(rng) < fill) t.push_back({i, j, u(rng)});
  return SparseMatrix::from_triplets(rows, cols, t);
}

Eigen::MatrixXd dense(const SparseMatrix& a) {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(a.rows(), a.cols());
  for (const auto& t : a.to_triplets()) d(t.row, t.col) += t.value;
  return d;
}

}  // namespace

TEST_CASE("triplets are merged, sorted and summed") {
  auto a = SparseMatrix::from_triplets(2, 3, {{1, 2, 1.0}, {0, 1, 2.0}, {1, 0, 3.0}, {0, 1, 0.5}});
  CHECK(a.nnz() == 3);
  CHECK(a.coeff(0, 1) == 2.5);
  CHECK(a.coeff(1, 0) == 3.0);
  CHECK(a.coeff(0, 0) == 0.0);
  for (Index i = 0; i < a.rows(); ++i) {
    auto c = a.row_cols(i);
    for (std::size_t k = 1; k < c.size(); ++k) CHECK(c[k - 1] < c[k]);
  }
}

TEST_CASE("spmv agrees with a dense multiply") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const int r = 1 + static_cast<int>(rng() % 50), c = 1 + static_cast<int>(rng() % 50);
    auto a = random_sparse(r, c, 0.2, rng);
    Eigen::VectorXd x = Eigen::VectorXd::Random(c);
    auto y = spmv(a, std::span<const double>(x.data(), c));
    Eigen::VectorXd ref = dense(a) * x;
    for (int i = 0; i < r; ++i) CHECK(y[i] == doctest::Approx(ref(i)).epsilon(1e-13));
  }
}

TEST_CASE("transpose and asymmetry") {
  std::mt19937 rng(3);
  auto a = random_sparse(8, 5, 0.4, rng);
  auto at = a.transpose();
  CHECK((dense(at) - dense(a).transpose()).norm() == 0.0);
  auto s = SparseMatrix::from_triplets(2, 2, {{0, 1, 1.0}, {1, 0, 1.5}});
  CHECK(s.asymmetry() == doctest::Approx(0.5));
}

TEST_CASE("block_compose places and scales blocks") {
  auto a = SparseMatrix::from_triplets(2, 2, {{0, 0, 2.0}, {0, 1, -1.0}, {1, 0, -1.0}, {1, 1, 2.0}});
  auto b = SparseMatrix::identity(1);
  std::vector<BlockEntry> blocks{{0, 0, &a, 1.0}, {2, 2, &b, 3.0}, {0, 0, &a, 0.5}};
  auto c = block_compose(3, 3, blocks);
  CHECK(c.coeff(0, 0) == 3.0);
  CHECK(c.coeff(0, 1) == -1.5);
  CHECK(c.coeff(2, 2) == 3.0);
  CHECK(c.coeff(0, 2) == 0.0);
  CHECK(c.asymmetry() == 0.0);
  std::vector<BlockEntry> bad{{2, 2, &a, 1.0}};
  CHECK_THROWS_AS(block_compose(3, 3, bad), InvalidArgument);
}

TEST_CASE("CG: identity solves in one iteration") {
  auto a = SparseMatrix::identity(5);
  std::vector<double> b{1, -2, 3, 0.5, 7};
  auto r = cg_solve(a, b);
  CHECK(r.report.converged);
  CHECK(r.report.iterations <= 1);
  for (int i = 0; i < 5; ++i) CHECK(r.x[i] == doctest::Approx(b[i]));
}

TEST_CASE("CG: 3x3 tridiagonal Laplacian") {
  auto a = SparseMatrix::from_triplets(
      3, 3, {{0, 0, 2}, {0, 1, -1}, {1, 0, -1}, {1, 1, 2}, {1, 2, -1}, {2, 1, -1}, {2, 2, 2}});
  std::vector<double> b{1, 0, 0};
  auto r = cg_solve(a, b);
  CHECK(r.report.converged);
  CHECK(r.x[0] == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(r.x[1] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r.x[2] == doctest::Approx(0.25).epsilon(1e-12));
  // reported residual is the true one
  auto ax = spmv(a, r.x);
  double res = 0;
  for (int i = 0; i < 3; ++i) res += (ax[i] - b[i]) * (ax[i] - b[i]);
  CHECK(std::abs(std::sqrt(res) - r.report.relative_residual) <= 1e-15);
}

TEST_CASE("CG: failure modes") {
  auto indefinite = SparseMatrix::from_triplets(2, 2, {{0, 0, 1.0}, {1, 1, -1.0}});
  std::vector<double> b{1.0, 1.0};
  CHECK_THROWS_AS(cg_solve(indefinite, b), NotSpdError);

  auto nonsym = SparseMatrix::from_triplets(2, 2, {{0, 0, 2.0}, {0, 1, 1.0}, {1, 1, 2.0}});
  CHECK_THROWS_AS(cg_solve(nonsym, b), NonsymmetricError);

  std::vector<Triplet> t;
  for (int i = 0; i < 50; ++i) {
    t.push_back({i, i, 2.0 + i});
    if (i > 0) {
      t.push_back({i, i - 1, -1.0});
      t.push_back({i - 1, i, -1.0});
    }
  }
  auto a = SparseMatrix::from_triplets(50, 50, t);
  std::vector<double> rhs(50, 1.0);
  CgOptions opt;
  opt.max_iterations = 2;
  try {
    (void)cg_solve(a, rhs, opt);
    FAIL("expected non-convergence");
  } catch (const NonConvergenceError& e) {
    CHECK(e.report().iterations == 2);
    CHECK_FALSE(e.report().converged);
  }
}

TEST_CASE("CG: warm start at the solution returns immediately") {
  auto a = SparseMatrix::from_triplets(2, 2, {{0, 0, 4.0}, {0, 1, 1.0}, {1, 0, 1.0}, {1, 1, 3.0}});
  std::vector<double> x{1.0 / 11.0, 7.0 / 11.0};
  std::vector<double> b{1.0, 2.0};
  auto r = cg_solve(a, b, {}, x);
  CHECK(r.report.iterations == 0);
  CHECK(r.report.converged);
}

TEST_CASE("MatrixMarket output") {
  auto a = SparseMatrix::from_triplets(2, 3, {{0, 2, 1.5}, {1, 0, -2.0}});
  const std::string path = scratch_path("unit_matrix.mtx");
  write_matrix_market(a, path);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "%%MatrixMarket matrix coordinate real general");
  int r, c, n;
  in >> r >> c >> n;
  CHECK(r == 2);
  CHECK(c == 3);
  CHECK(n == 2);
}
