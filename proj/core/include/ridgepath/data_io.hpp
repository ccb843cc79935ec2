#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ridgepath/matrix.hpp"
#include "ridgepath/path_solver.hpp"

namespace ridgepath {

/// Malformed input text; carries the 1-based line and column of the offence.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

struct Dataset {
  Matrix a_train;
  Vector b_train;
  std::optional<Matrix> a_test;
  std::optional<Vector> b_test;
  std::string provenance;

  Index feature_count() const { return a_train.cols(); }
  const Matrix* test_matrix() const { return a_test ? &*a_test : nullptr; }
  const Vector* test_labels() const { return b_test ? &*b_test : nullptr; }
};

/// Reads LIBSVM text: "label idx:val idx:val ..." with 1-based strictly
/// increasing indices per line. Blank lines are skipped and '#' starts a
/// comment. The column count is the largest index seen unless overridden.
std::pair<CsrMatrix, Vector> parse_libsvm(
    std::istream& in, std::optional<Index> feature_override = std::nullopt);

void write_libsvm(std::ostream& out, const CsrMatrix& matrix,
                  const Vector& labels);
void write_libsvm(std::ostream& out, const Matrix& matrix, const Vector& labels);

Dataset load_libsvm_file(const std::string& path,
                         std::optional<Index> feature_override = std::nullopt);

/// Synthetic regression pair. Train rows are N(0, C^2/sqrt(nd)) and test
/// rows N(0, C^2/(nd)) with C_{ij} = ar_coeff^|i-j|; labels are A v* + noise
/// with v* ~ N(0, I/d) and noise ~ N(0, sigma_noise^2).
Dataset gen_synthetic(Index n, Index d, double ar_coeff, double sigma_noise,
                      std::uint64_t seed);

/// Gaussian kernel blocks: k(x, y) = (2 pi h)^(-p/2) exp(-|x-y|^2 / (2h))
/// over rows of the point matrices; the train block is symmetric.
DenseMatrix gaussian_kernel_block(const DenseMatrix& rows_x,
                                  const DenseMatrix& rows_y, double bandwidth);

/// Replaces the dataset's matrices by kernel matrices built from its rows:
/// A <- k(train, train), A_test <- k(test, train). Labels pass through.
Dataset kernelize(const Dataset& points, double bandwidth);

/// Dense input: affine map of the global [min, max] onto [-1, 1].
/// CSR input: division by the largest magnitude, preserving sparsity.
Matrix rescale_features(const Matrix& m);

/// Random permutation split: first ceil(n/2) rows train, rest test.
Dataset split_half(const Matrix& a, const Vector& b, std::uint64_t seed);

/// CSV with header lambda,train_loss,test_loss,time_s,solver, one row per
/// (lambda, solver), rows sorted by lambda then solver name, floats at 17
/// significant digits. An absent test loss leaves the field empty.
void write_csv(std::ostream& out, const std::vector<RegPathResult>& results);

std::string format_double(double v);

}  // namespace ridgepath
