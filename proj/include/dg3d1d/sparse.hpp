#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace dg3d1d {

using Index = std::ptrdiff_t;

/// Coordinate-list entry; duplicates are summed when compressed.
struct Triplet {
  Index row;
  Index col;
  double value;
};

/// Compressed sparse row matrix. Column indices are sorted within each row
/// and contain no duplicates.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(Index rows, Index cols);

  /// Builds from triplets. Entries are merged in (row, col) order so the
  /// result does not depend on the order in which triplets were produced.
  static SparseMatrix from_triplets(Index rows, Index cols,
                                    std::vector<Triplet> triplets);
  static SparseMatrix identity(Index n);

  [[nodiscard]] Index rows() const { return rows_; }
  [[nodiscard]] Index cols() const { return cols_; }
  [[nodiscard]] std::size_t nnz() const { return values_.size(); }

  [[nodiscard]] std::span<const Index> row_offsets() const { return offsets_; }
  [[nodiscard]] std::span<const Index> col_indices() const { return cols_idx_; }
  [[nodiscard]] std::span<const double> values() const { return values_; }
  [[nodiscard]] std::span<double> values() { return values_; }

  [[nodiscard]] std::span<const Index> row_cols(Index i) const {
    return std::span<const Index>(cols_idx_).subspan(offsets_[i], offsets_[i + 1] - offsets_[i]);
  }
  [[nodiscard]] std::span<const double> row_values(Index i) const {
    return std::span<const double>(values_).subspan(offsets_[i], offsets_[i + 1] - offsets_[i]);
  }

  /// Entry lookup by binary search; zero when not stored.
  [[nodiscard]] double coeff(Index i, Index j) const;
  [[nodiscard]] std::vector<double> diagonal() const;
  [[nodiscard]] double max_abs() const;

  [[nodiscard]] SparseMatrix transpose() const;
  [[nodiscard]] std::vector<Triplet> to_triplets() const;

  /// max |A_ij - A_ji| over stored entries, without normalisation.
  [[nodiscard]] double asymmetry() const;

 private:
  Index rows_ = 0;
  Index cols_ = 0;
  std::vector<Index> offsets_{0};
  std::vector<Index> cols_idx_;
  std::vector<double> values_;
};

/// y = A x. Rows are split over DG3D1D_THREADS worker threads when that
/// variable is set; each row is summed in stored order either way.
void spmv(const SparseMatrix& a, std::span<const double> x, std::span<double> y);
std::vector<double> spmv(const SparseMatrix& a, std::span<const double> x);

/// One block of a block-structured matrix: `matrix` scaled by `scale` with
/// its (0,0) entry placed at (row_offset, col_offset).
struct BlockEntry {
  Index row_offset;
  Index col_offset;
  const SparseMatrix* matrix;
  double scale = 1.0;
};

/// Sums scaled blocks into one rows x cols matrix. Throws InvalidArgument if
/// a block does not fit.
SparseMatrix block_compose(Index rows, Index cols, std::span<const BlockEntry> blocks);

/// Writes MatrixMarket coordinate/real/general format.
void write_matrix_market(const SparseMatrix& a, const std::string& path);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

}  // namespace dg3d1d
