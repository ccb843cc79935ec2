#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ridgepath/matrix.hpp"
#include "ridgepath/preconditioner.hpp"
#include "ridgepath/sketch.hpp"
#include "ridgepath/spectrum.hpp"

namespace ridgepath {

/// A basis construction produced non-finite values (step size too large for
/// the realized sketch). Path drivers retry once at half the step.
class BasisDivergedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A solver failed beyond recovery (retries exhausted, iteration caps hit).
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class BasisFlavor { Gd, Ihs };

/// Lambda-independent basis vectors for one interval. Evaluating the
/// regularization path at any lambda in the interval is a Horner pass over
/// the k stored terms.
struct BinomialBasis {
  std::vector<DenseMatrix> terms;  // k blocks, each dim x K
  double tau = 0.0;
  double lambda_lo = 0.0;
  double lambda_hi = 0.0;
  BasisFlavor flavor = BasisFlavor::Ihs;

  int k() const { return static_cast<int>(terms.size()); }
  Index dim() const { return terms.empty() ? 0 : terms.front().rows(); }
  Index rhs_cols() const { return terms.empty() ? 0 : terms.front().cols(); }
};

/// One evaluated grid point. solution is dim x K (K = 1 for vector
/// problems); seconds covers the path evaluation only, not setup.
struct PathPoint {
  double lambda = 0.0;
  DenseMatrix solution;
  double train_loss = 0.0;
  std::optional<double> test_loss;
  double seconds = 0.0;
  int iterations = 0;  ///< inner iterations, for the iterative baselines
};

struct RegPathResult {
  std::string solver;
  std::vector<PathPoint> points;
  double setup_seconds = 0.0;  ///< sketch + SVD + basis construction
  double total_seconds = 0.0;
};

struct LossPair {
  double train = 0.0;
  std::optional<double> test;
};

// ---- basis construction and composition ------------------------------------

/// Gradient-descent basis: u_j = sum_i C(i+j, j) (I - tau A^T A)^i A^T b.
/// Guarded at k > 60, where the binomial coefficients exceed 2^53.
BinomialBasis gd_basis(const Matrix& a, const Vector& b, double tau, int k);

/// Evaluates the GD basis at lambda: tau * sum_j (-tau lambda)^j u_j (Horner).
Vector gd_compose(const BinomialBasis& basis, double lambda);

/// Sketched-Newton basis for one interval. Runs the in-place recursion
///
///   u_{i+1,0}   = (I - tau P A^T A) u_{i,0}
///   u_{i+1,j}   = (I - tau P A^T A) u_{i,j} - P u_{i,j-1}
///   u_{i+1,i+1} = -P u_{i,i}
///
/// from u_{0,0} = P A^T b, accumulating tilde_u_j = sum_i u_{i,j}. Each
/// generation reads only the previous one, so the per-generation gram and
/// preconditioner applications are batched into block products.
/// Cost O((m d + nnz(A)) k^2). Throws BasisDivergedError on non-finite
/// intermediates.
BinomialBasis ihs_basis(const Matrix& a, const Vector& b,
                        const Preconditioner& p, double tau, int k);

/// Evaluates the sketched-Newton basis: tau * sum_j (tau lambda)^j u~_j.
Vector ihs_compose(const BinomialBasis& basis, double lambda);

/// Column-wise extension to a matrix right-hand side B (n x K); each column
/// runs the identical vector recursion, so results match K vector runs
/// bit for bit.
BinomialBasis ihs_basis_matrix(const Matrix& a, const DenseMatrix& b,
                               const Preconditioner& p, double tau, int k);

DenseMatrix ihs_compose_matrix(const BinomialBasis& basis, double lambda);

// ---- end-to-end paths -------------------------------------------------------

/// Full regularization path: sketches A once, shares one SVD of SA across
/// all intervals (only the shift changes), builds one basis per interval and
/// composes every grid lambda from it. An interval whose basis diverges is
/// retried once at tau/2.
RegPathResult ihs_bin_path(const Matrix& a, const Vector& b,
                           const PathConfig& config, const SketchSpec& spec,
                           const RhoBounds& rho,
                           std::optional<double> sigma_d = std::nullopt,
                           const Matrix* a_test = nullptr,
                           const Vector* b_test = nullptr);

RegPathResult ihs_bin_path_matrix(const Matrix& a, const DenseMatrix& b,
                                  const PathConfig& config,
                                  const SketchSpec& spec, const RhoBounds& rho,
                                  std::optional<double> sigma_d = std::nullopt,
                                  const Matrix* a_test = nullptr,
                                  const DenseMatrix* b_test = nullptr);

/// Unsketched analogue: one GD basis covers the whole grid. Falls back to
/// per-lambda gradient descent when the required budget exceeds the
/// coefficient guard.
RegPathResult gd_bin_path(const Matrix& a, const Vector& b,
                          const PathConfig& config,
                          const Matrix* a_test = nullptr,
                          const Vector* b_test = nullptr);

/// Under-determined route: solves the dual system (A A^T + lambda I) z = b
/// with the same machinery applied to A^T, then recovers the primal solution
/// v = A^T z per grid point. spec.n must equal A.cols().
RegPathResult dual_path(const Matrix& a, const Vector& b,
                        const PathConfig& config, const SketchSpec& spec,
                        const RhoBounds& rho,
                        std::optional<double> sigma_d = std::nullopt,
                        const Matrix* a_test = nullptr,
                        const Vector* b_test = nullptr);

// ---- losses -----------------------------------------------------------------

/// train = 0.5 ||A x - b||^2 + lambda/2 ||x||^2, test = 0.5 ||At x - bt||^2.
LossPair losses(const Matrix& a, const Vector& b, const Matrix* a_test,
                const Vector* b_test, const Vector& x, double lambda);

LossPair losses_matrix(const Matrix& a, const DenseMatrix& b,
                       const Matrix* a_test, const DenseMatrix* b_test,
                       const DenseMatrix& x, double lambda);

/// Running count of composition axpy operations (k per composed column);
/// backs the O(T d) evaluation-cost check.
std::uint64_t compose_axpy_count();
void reset_compose_axpy_count();

}  // namespace ridgepath
