#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <variant>
#include <vector>

namespace ridgepath {

using DenseMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Compressed sparse row storage. Column indices are strictly increasing
/// within each row and every stored value is finite.
class CsrMatrix {
 public:
  CsrMatrix() = default;

  /// Takes ownership of raw CSR arrays; validates the structural invariants.
  CsrMatrix(Index rows, Index cols, std::vector<Index> row_offsets,
            std::vector<Index> col_indices, std::vector<double> values);

  /// Builds from (row, col, value) triplets in any order. Duplicate entries
  /// are summed; exact zeros produced by summation are kept.
  static CsrMatrix from_triplets(
      Index rows, Index cols,
      std::vector<std::tuple<Index, Index, double>> triplets);

  static CsrMatrix from_dense(const DenseMatrix& dense, double drop_tol = 0.0);

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  Index nnz() const { return static_cast<Index>(values_.size()); }

  const std::vector<Index>& row_offsets() const { return row_offsets_; }
  const std::vector<Index>& col_indices() const { return col_indices_; }
  const std::vector<double>& values() const { return values_; }

  DenseMatrix to_dense() const;
  CsrMatrix transposed() const;
  double frobenius_norm() const;

 private:
  Index rows_ = 0;
  Index cols_ = 0;
  std::vector<Index> row_offsets_ = {0};
  std::vector<Index> col_indices_;
  std::vector<double> values_;
};

/// A data matrix, dense or CSR. Immutable after construction; all operations
/// on it are pure functions, so concurrent reads are safe.
class Matrix {
 public:
  Matrix() : storage_(DenseMatrix()) {}
  Matrix(DenseMatrix dense) : storage_(std::move(dense)) {}
  Matrix(CsrMatrix csr) : storage_(std::move(csr)) {}

  bool is_dense() const { return std::holds_alternative<DenseMatrix>(storage_); }
  const DenseMatrix& dense() const { return std::get<DenseMatrix>(storage_); }
  const CsrMatrix& csr() const { return std::get<CsrMatrix>(storage_); }

  Index rows() const;
  Index cols() const;
  /// Stored-entry count; rows*cols for dense storage.
  Index nnz() const;
  double frobenius_norm() const;
  DenseMatrix to_dense() const;

 private:
  std::variant<DenseMatrix, CsrMatrix> storage_;
};

/// Thin SVD factors M = U diag(sigma) Vt with sigma sorted descending.
struct SvdFactors {
  DenseMatrix U;
  Vector sigma;
  DenseMatrix Vt;
};

Vector apply(const Matrix& a, const Vector& x);
Vector apply_transpose(const Matrix& a, const Vector& y);
/// A^T (A x) without forming A^T A; evaluation order is exactly
/// apply_transpose(a, apply(a, x)).
Vector gram_apply(const Matrix& a, const Vector& x);

// Block variants (one call per right-hand-side column, fused into GEMM on
// the dense path).
DenseMatrix apply(const Matrix& a, const DenseMatrix& x);
DenseMatrix apply_transpose(const Matrix& a, const DenseMatrix& y);
DenseMatrix gram_apply(const Matrix& a, const DenseMatrix& x);

Matrix transpose(const Matrix& a);

SvdFactors thin_svd(const DenseMatrix& m);

/// Running count of gram-operator column applications, for operation-count
/// checks. A block gram_apply on W columns adds W.
std::uint64_t gram_apply_count();
void reset_gram_apply_count();

}  // namespace ridgepath
