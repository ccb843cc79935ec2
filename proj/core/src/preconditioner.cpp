#include "ridgepath/preconditioner.hpp"

#include <stdexcept>

namespace ridgepath {

Preconditioner Preconditioner::build(const SketchedMatrix& sa, double lambda0) {
  return build(thin_svd(sa.product), sa.product.rows(), sa.product.cols(),
               lambda0);
}

Preconditioner Preconditioner::build(const SvdFactors& svd_of_sa, Index m,
                                     Index d, double lambda0) {
  if (lambda0 <= 0.0)
    throw std::invalid_argument("preconditioner: shift must be positive");
  Preconditioner p;
  p.m_ = m;
  p.d_ = d;
  p.lambda0_ = lambda0;

  const Index full = svd_of_sa.sigma.size();
  const double smax = full > 0 ? svd_of_sa.sigma[0] : 0.0;
  Index r = 0;
  while (r < full && svd_of_sa.sigma[r] > 1e-12 * smax) ++r;
  p.sigma_ = svd_of_sa.sigma.head(r);
  p.vt_ = svd_of_sa.Vt.topRows(r);
  p.projection_form_ = (m >= d) && (r == d);
  p.refresh_weights();
  return p;
}

Preconditioner Preconditioner::reshift(double new_lambda0) const {
  if (new_lambda0 <= 0.0)
    throw std::invalid_argument("preconditioner: shift must be positive");
  Preconditioner p = *this;
  p.lambda0_ = new_lambda0;
  p.refresh_weights();
  return p;
}

void Preconditioner::refresh_weights() {
  weights_.resize(sigma_.size());
  for (Index i = 0; i < sigma_.size(); ++i) {
    const double inv = 1.0 / (sigma_[i] * sigma_[i] + lambda0_);
    weights_[i] = projection_form_ ? inv : inv - 1.0 / lambda0_;
  }
}

Vector Preconditioner::apply(const Vector& v) const {
  if (v.size() != d_)
    throw std::invalid_argument("preconditioner apply: dimension mismatch");
  Vector coeffs = vt_ * v;
  coeffs.array() *= weights_.array();
  if (projection_form_) return vt_.transpose() * coeffs;
  return v / lambda0_ + vt_.transpose() * coeffs;
}

DenseMatrix Preconditioner::apply(const DenseMatrix& v) const {
  if (v.rows() != d_)
    throw std::invalid_argument("preconditioner apply: dimension mismatch");
  DenseMatrix coeffs = vt_ * v;
  coeffs.array().colwise() *= weights_.array();
  if (projection_form_) return vt_.transpose() * coeffs;
  return v / lambda0_ + vt_.transpose() * coeffs;
}

}  // namespace ridgepath
