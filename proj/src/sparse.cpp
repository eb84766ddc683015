#include "dg3d1d/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <thread>

#include "dg3d1d/errors.hpp"

namespace dg3d1d {

namespace {

int worker_count() {
  static const int count = [] {
    const char* env = std::getenv("DG3D1D_THREADS");
    if (env == nullptr) return 1;
    const int n = std::atoi(env);
    return std::clamp(n, 1, 256);
  }();
  return count;
}

void spmv_rows(const SparseMatrix& a, std::span<const double> x, std::span<double> y,
               Index begin, Index end) {
  const auto off = a.row_offsets();
  const auto col = a.col_indices();
  const auto val = a.values();
  for (Index i = begin; i < end; ++i) {
    double sum = 0.0;
    for (Index k = off[i]; k < off[i + 1]; ++k) sum += val[k] * x[col[k]];
    y[i] = sum;
  }
}

}  // namespace

SparseMatrix::SparseMatrix(Index rows, Index cols)
    : rows_(rows), cols_(cols), offsets_(static_cast<std::size_t>(rows) + 1, 0) {}

SparseMatrix SparseMatrix::from_triplets(Index rows, Index cols,
                                         std::vector<Triplet> triplets) {
  for (const auto& t : triplets) {
    if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols)
      throw InvalidArgument("triplet (" + std::to_string(t.row) + ", " +
                            std::to_string(t.col) + ") outside " + std::to_string(rows) +
                            "x" + std::to_string(cols) + " matrix");
  }
  // Stable sort keeps the summation order of duplicates equal to insertion
  // order, which makes the merge bit-reproducible.
  std::stable_sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  SparseMatrix m(rows, cols);
  m.cols_idx_.reserve(triplets.size());
  m.values_.reserve(triplets.size());
  for (std::size_t k = 0; k < triplets.size();) {
    const Index r = triplets[k].row;
    const Index c = triplets[k].col;
    double sum = 0.0;
    while (k < triplets.size() && triplets[k].row == r && triplets[k].col == c) {
      sum += triplets[k].value;
      ++k;
    }
    m.cols_idx_.push_back(c);
    m.values_.push_back(sum);
    ++m.offsets_[static_cast<std::size_t>(r) + 1];
  }
  for (Index i = 0; i < rows; ++i) m.offsets_[i + 1] += m.offsets_[i];
  return m;
}

SparseMatrix SparseMatrix::identity(Index n) {
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) t.push_back({i, i, 1.0});
  return from_triplets(n, n, std::move(t));
}

double SparseMatrix::coeff(Index i, Index j) const {
  const auto first = cols_idx_.begin() + offsets_[i];
  const auto last = cols_idx_.begin() + offsets_[i + 1];
  const auto it = std::lower_bound(first, last, j);
  if (it == last || *it != j) return 0.0;
  return values_[static_cast<std::size_t>(it - cols_idx_.begin())];
}

std::vector<double> SparseMatrix::diagonal() const {
  std::vector<double> d(static_cast<std::size_t>(std::min(rows_, cols_)), 0.0);
  for (Index i = 0; i < static_cast<Index>(d.size()); ++i) d[i] = coeff(i, i);
  return d;
}

double SparseMatrix::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

SparseMatrix SparseMatrix::transpose() const {
  std::vector<Triplet> t = to_triplets();
  for (auto& e : t) std::swap(e.row, e.col);
  return from_triplets(cols_, rows_, std::move(t));
}

std::vector<Triplet> SparseMatrix::to_triplets() const {
  std::vector<Triplet> t;
  t.reserve(values_.size());
  for (Index i = 0; i < rows_; ++i)
    for (Index k = offsets_[i]; k < offsets_[i + 1]; ++k)
      t.push_back({i, cols_idx_[k], values_[k]});
  return t;
}

double SparseMatrix::asymmetry() const {
  if (rows_ != cols_) throw InvalidArgument("asymmetry of a non-square matrix");
  double worst = 0.0;
  for (Index i = 0; i < rows_; ++i)
    for (Index k = offsets_[i]; k < offsets_[i + 1]; ++k)
      worst = std::max(worst, std::abs(values_[k] - coeff(cols_idx_[k], i)));
  return worst;
}

void spmv(const SparseMatrix& a, std::span<const double> x, std::span<double> y) {
  if (static_cast<Index>(x.size()) != a.cols() || static_cast<Index>(y.size()) != a.rows())
    throw InvalidArgument("spmv: dimension mismatch");
  const int workers = worker_count();
  const Index n = a.rows();
  if (workers == 1 || n < 4096) {
    spmv_rows(a, x, y, 0, n);
    return;
  }
  std::vector<std::jthread> pool;
  const Index chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const Index begin = w * chunk;
    const Index end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&, begin, end] { spmv_rows(a, x, y, begin, end); });
  }
}

std::vector<double> spmv(const SparseMatrix& a, std::span<const double> x) {
  std::vector<double> y(static_cast<std::size_t>(a.rows()));
  spmv(a, x, y);
  return y;
}

SparseMatrix block_compose(Index rows, Index cols, std::span<const BlockEntry> blocks) {
  std::vector<Triplet> all;
  for (const auto& b : blocks) {
    if (b.matrix == nullptr) throw InvalidArgument("block_compose: null block");
    if (b.row_offset < 0 || b.col_offset < 0 || b.row_offset + b.matrix->rows() > rows ||
        b.col_offset + b.matrix->cols() > cols)
      throw InvalidArgument("block_compose: block of size " + std::to_string(b.matrix->rows()) +
                            "x" + std::to_string(b.matrix->cols()) + " at (" +
                            std::to_string(b.row_offset) + ", " + std::to_string(b.col_offset) +
                            ") exceeds " + std::to_string(rows) + "x" + std::to_string(cols));
    for (auto t : b.matrix->to_triplets()) {
      t.row += b.row_offset;
      t.col += b.col_offset;
      t.value *= b.scale;
      all.push_back(t);
    }
  }
  return SparseMatrix::from_triplets(rows, cols, std::move(all));
}

void write_matrix_market(const SparseMatrix& a, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << a.rows() << ' ' << a.cols() << ' ' << a.nnz() << '\n';
  out << std::setprecision(17);
  for (const auto& t : a.to_triplets()) out << t.row + 1 << ' ' << t.col + 1 << ' ' << t.value << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

}  // namespace dg3d1d
