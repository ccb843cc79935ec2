#pragma once

#include "ridgepath/matrix.hpp"
#include "ridgepath/sketch.hpp"

namespace ridgepath {

/// Applies (A^T S^T S A + lambda0 I)^{-1} from one SVD of SA.
///
/// The dense inverse is never formed. With SA = U1 S1 V1t and r the numerical
/// rank, one of two equivalent routes is used:
///
///   rank-deficient or m < d:   v/l0 + V1t^T ((S1^2+l0)^{-1} - 1/l0) V1t v
///   m >= d at full rank:       V1t^T (S1^2+l0)^{-1} V1t v
///
/// Singular values below 1e-12 * sigma_max(SA) are treated as exact zeros;
/// the lambda0 shift keeps the operator positive definite regardless.
/// Instances are immutable after construction, so concurrent apply calls
/// are safe; reshift produces a cheap sibling sharing the same factors.
class Preconditioner {
 public:
  /// Builds from a sketched matrix (runs the SVD of SA, cost O(m^2 d) for
  /// m < d). Throws on a nonpositive shift; SVD failures propagate.
  static Preconditioner build(const SketchedMatrix& sa, double lambda0);

  /// Builds from precomputed SVD factors of SA.
  static Preconditioner build(const SvdFactors& svd_of_sa, Index m, Index d,
                              double lambda0);

  /// Same factors, new shift. O(rank) metadata update.
  Preconditioner reshift(double new_lambda0) const;

  Vector apply(const Vector& v) const;
  DenseMatrix apply(const DenseMatrix& v) const;

  double lambda0() const { return lambda0_; }
  Index rank() const { return sigma_.size(); }
  Index sketch_rows() const { return m_; }
  Index dim() const { return d_; }
  const Vector& sigma() const { return sigma_; }

 private:
  Preconditioner() = default;
  void refresh_weights();

  DenseMatrix vt_;   // r x d, kept right singular vectors of SA
  Vector sigma_;     // kept singular values, descending
  Vector weights_;   // per-mode diagonal used by apply
  double lambda0_ = 0.0;
  Index m_ = 0;
  Index d_ = 0;
  bool projection_form_ = false;  // true only at full rank with m >= d
};

}  // namespace ridgepath
