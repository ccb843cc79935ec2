#include "ridgepath/baselines.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "ridgepath/preconditioner.hpp"

namespace ridgepath {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point from) {
  return std::chrono::duration<double>(Clock::now() - from).count();
}

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

PathPoint make_point(const Matrix& a, const Vector& b, const Matrix* a_test,
                     const Vector* b_test, Vector x, double lambda,
                     double seconds, int iterations) {
  PathPoint point;
  point.lambda = lambda;
  point.seconds = seconds;
  point.iterations = iterations;
  const LossPair lp = losses(a, b, a_test, b_test, x, lambda);
  point.train_loss = lp.train;
  point.test_loss = lp.test;
  point.solution = std::move(x);
  return point;
}

// Descending sweep order used by the warm-started solvers; results are
// restored to grid order afterwards.
std::vector<std::size_t> descending_order(const std::vector<double>& grid) {
  std::vector<std::size_t> idx(grid.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t i, std::size_t j) { return grid[i] > grid[j]; });
  return idx;
}

}  // namespace

RegPathResult svd_path(const Matrix& a, const Vector& b,
                       const PathConfig& config, const Matrix* a_test,
                       const Vector* b_test) {
  const auto t_total = Clock::now();
  config.validate();
  require(b.size() == a.rows(), "svd_path: dimension mismatch");

  RegPathResult result;
  result.solver = "svd";
  const auto t_setup = Clock::now();
  const SvdFactors svd = thin_svd(a.to_dense());
  const Vector utb = svd.U.transpose() * b;
  result.setup_seconds = elapsed(t_setup);

  for (double lambda : config.lambdas) {
    const auto t_eval = Clock::now();
    Vector scaled(svd.sigma.size());
    for (Index i = 0; i < svd.sigma.size(); ++i)
      scaled[i] = svd.sigma[i] * utb[i] / (svd.sigma[i] * svd.sigma[i] + lambda);
    Vector x = svd.Vt.transpose() * scaled;
    const double secs = elapsed(t_eval);
    result.points.push_back(
        make_point(a, b, a_test, b_test, std::move(x), lambda, secs, 0));
  }
  result.total_seconds = elapsed(t_total);
  return result;
}

RegPathResult direct_path(const Matrix& a, const Vector& b,
                          const PathConfig& config, const Matrix* a_test,
                          const Vector* b_test) {
  const auto t_total = Clock::now();
  config.validate();
  require(b.size() == a.rows(), "direct_path: dimension mismatch");

  RegPathResult result;
  result.solver = "direct";
  const auto t_setup = Clock::now();
  const Index d = a.cols();
  DenseMatrix gram;
  if (a.is_dense()) {
    gram = DenseMatrix::Zero(d, d);
    gram.selfadjointView<Eigen::Lower>().rankUpdate(a.dense().transpose());
    gram = gram.selfadjointView<Eigen::Lower>();
  } else {
    gram = apply_transpose(a, apply(a, DenseMatrix(DenseMatrix::Identity(d, d))));
  }
  const Vector atb = apply_transpose(a, b);
  result.setup_seconds = elapsed(t_setup);

  DenseMatrix shifted(d, d);
  for (double lambda : config.lambdas) {
    const auto t_eval = Clock::now();
    shifted = gram;
    shifted.diagonal().array() += lambda;
    const Eigen::LLT<Eigen::Ref<DenseMatrix>> llt(shifted);
    if (llt.info() != Eigen::Success)
      throw SolverError("direct_path: Cholesky factorization failed");
    Vector x = llt.solve(atb);
    const double secs = elapsed(t_eval);
    result.points.push_back(
        make_point(a, b, a_test, b_test, std::move(x), lambda, secs, 0));
  }
  result.total_seconds = elapsed(t_total);
  return result;
}

RegPathResult warm_cg_path(const Matrix& a, const Vector& b,
                           const PathConfig& config, const Matrix* a_test,
                           const Vector* b_test) {
  const auto t_total = Clock::now();
  config.validate();
  require(b.size() == a.rows(), "warm_cg_path: dimension mismatch");

  RegPathResult result;
  result.solver = "cg";
  const auto t_setup = Clock::now();
  const Vector atb = apply_transpose(a, b);
  const double rhs_norm = atb.norm();
  result.setup_seconds = elapsed(t_setup);

  const Index d = a.cols();
  const int cap = static_cast<int>(10 * d);
  const double tol = config.epsilon * (rhs_norm > 0.0 ? rhs_norm : 1.0);

  std::vector<PathPoint> points(config.lambdas.size());
  Vector x = Vector::Zero(d);
  for (std::size_t idx : descending_order(config.lambdas)) {
    const double lambda = config.lambdas[idx];
    const auto t_eval = Clock::now();
    Vector r = atb - gram_apply(a, x) - lambda * x;
    Vector p = r;
    double rr = r.squaredNorm();
    int iters = 0;
    while (std::sqrt(rr) > tol) {
      if (iters >= cap)
        throw SolverError("warm_cg_path: iteration cap (10 d) reached");
      Vector q = gram_apply(a, p) + lambda * p;
      const double alpha = rr / p.dot(q);
      x += alpha * p;
      r -= alpha * q;
      const double rr_next = r.squaredNorm();
      p = r + (rr_next / rr) * p;
      rr = rr_next;
      ++iters;
    }
    const double secs = elapsed(t_eval);
    points[idx] = make_point(a, b, a_test, b_test, x, lambda, secs, iters);
  }
  result.points = std::move(points);
  result.total_seconds = elapsed(t_total);
  return result;
}

RegPathResult warm_ihs_path(const Matrix& a, const Vector& b,
                            const PathConfig& config, const SketchSpec& spec,
                            const RhoBounds& rho, const Matrix* a_test,
                            const Vector* b_test) {
  const auto t_total = Clock::now();
  config.validate();
  rho.validate();
  require(b.size() == a.rows(), "warm_ihs_path: dimension mismatch");
  require(spec.n == a.rows(), "warm_ihs_path: spec.n must equal A.rows");

  RegPathResult result;
  result.solver = "ihs";
  const auto t_setup = Clock::now();
  const SketchedMatrix sa = sketch_apply(spec, a);
  const SvdFactors svd = thin_svd(sa.product);
  const Vector atb = apply_transpose(a, b);
  const double rhs_norm = atb.norm();
  Preconditioner pre = Preconditioner::build(svd, sa.product.rows(),
                                             sa.product.cols(),
                                             config.lambdas.back());
  result.setup_seconds = elapsed(t_setup);

  // With the shift pinned to the active lambda the interval is degenerate,
  // and the balancing step reduces to the harmonic mean of the rho bounds.
  const double tau_nominal = 2.0 / (1.0 / rho.rho1 + 1.0 / rho.rho2);
  const double tol = config.epsilon * (rhs_norm > 0.0 ? rhs_norm : 1.0);
  const int cap = 1000;

  std::vector<PathPoint> points(config.lambdas.size());
  Vector x = Vector::Zero(a.cols());
  for (std::size_t idx : descending_order(config.lambdas)) {
    const double lambda = config.lambdas[idx];
    const auto t_eval = Clock::now();
    pre = pre.reshift(lambda);
    double tau = tau_nominal;
    Vector x_sweep = x;
    int iters = 0;
    bool retried = false;
    while (true) {
      const Vector grad = gram_apply(a, x_sweep) + lambda * x_sweep - atb;
      if (grad.norm() <= tol) break;
      if (iters >= cap)
        throw SolverError("warm_ihs_path: iteration cap reached");
      x_sweep -= tau * pre.apply(grad);
      ++iters;
      if (!x_sweep.allFinite()) {
        if (retried)
          throw SolverError("warm_ihs_path: diverged twice, even at tau/2");
        retried = true;
        tau /= 2.0;
        x_sweep = x;
        iters = 0;
      }
    }
    x = x_sweep;
    const double secs = elapsed(t_eval);
    points[idx] = make_point(a, b, a_test, b_test, x, lambda, secs, iters);
  }
  result.points = std::move(points);
  result.total_seconds = elapsed(t_total);
  return result;
}

}  // namespace ridgepath
