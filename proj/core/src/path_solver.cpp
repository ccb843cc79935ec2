#include "ridgepath/path_solver.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace ridgepath {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point from) {
  return std::chrono::duration<double>(Clock::now() - from).count();
}

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

std::atomic<std::uint64_t> g_compose_count{0};

// Shared recursion kernel; `a` is the operator whose gram matters (A for the
// primal route, A^T for the dual), `c` is the linear term with the leading
// preconditioner application still pending.
DenseMatrix ihs_basis_core(const Matrix& a, const Vector& c,
                           const Preconditioner& p, double tau, int k) {
  const Index dim = c.size();
  require(k >= 1, "ihs_basis: k must be >= 1");
  require(tau > 0.0, "ihs_basis: tau must be positive");
  require(a.cols() == dim, "ihs_basis: operator/right-hand-side mismatch");
  require(p.dim() == dim, "ihs_basis: preconditioner dimension mismatch");

  DenseMatrix gen(dim, k);
  DenseMatrix tilde = DenseMatrix::Zero(dim, k);
  gen.col(0) = p.apply(Vector(c));
  tilde.col(0) = gen.col(0);
  for (int g = 1; g < k; ++g) {
    const DenseMatrix w = gen.leftCols(g);
    DenseMatrix args(dim, g + 1);
    args.leftCols(g) = tau * gram_apply(a, w);
    for (int j = 1; j < g; ++j) args.col(j) += w.col(j - 1);
    args.col(g) = w.col(g - 1);
    const DenseMatrix applied = p.apply(args);
    gen.leftCols(g) -= applied.leftCols(g);
    gen.col(g) = -applied.col(g);
    if (!gen.leftCols(g + 1).allFinite())
      throw BasisDivergedError("basis recursion diverged (step too large)");
    tilde.leftCols(g + 1) += gen.leftCols(g + 1);
  }
  return tilde;
}

std::vector<DenseMatrix> split_columns(const DenseMatrix& tilde) {
  std::vector<DenseMatrix> out;
  out.reserve(static_cast<std::size_t>(tilde.cols()));
  for (Index j = 0; j < tilde.cols(); ++j) out.push_back(tilde.col(j));
  return out;
}

// Horner pass over the basis terms in powers of `t`; counts k axpy units
// per composed column.
DenseMatrix compose_horner(const BinomialBasis& basis, double t) {
  const int k = basis.k();
  DenseMatrix x = basis.terms[static_cast<std::size_t>(k - 1)];
  for (int j = k - 2; j >= 0; --j)
    x = basis.terms[static_cast<std::size_t>(j)] + t * x;
  x *= basis.tau;
  g_compose_count.fetch_add(
      static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(x.cols()),
      std::memory_order_relaxed);
  return x;
}

struct IntervalPlan {
  double lo = 0.0;
  double hi = 0.0;
  RateParams params;
  std::vector<double> grid;  // grid points assigned to this interval
};

// Boundary grid points belong to the interval on their left; the last
// interval absorbs everything that remains.
std::vector<IntervalPlan> plan_intervals(const PathConfig& config,
                                         const RhoBounds& rho,
                                         std::optional<double> sigma_d) {
  const auto splits =
      interval_split(config.lambda_min, config.lambda_max, config.num_intervals);
  std::vector<IntervalPlan> plans;
  plans.reserve(splits.size());
  std::size_t cursor = 0;
  for (std::size_t i = 0; i < splits.size(); ++i) {
    IntervalPlan plan;
    plan.lo = splits[i].first;
    plan.hi = splits[i].second;
    plan.params =
        tune_interval(plan.lo, plan.hi, rho, sigma_d, config.epsilon);
    const bool last = (i + 1 == splits.size());
    while (cursor < config.lambdas.size() &&
           (last || config.lambdas[cursor] <= plan.hi)) {
      plan.grid.push_back(config.lambdas[cursor]);
      ++cursor;
    }
    plans.push_back(std::move(plan));
  }
  return plans;
}

BinomialBasis build_interval_basis_matrix(const Matrix& op, const DenseMatrix& c,
                                          const Preconditioner& p,
                                          const IntervalPlan& plan) {
  auto attempt = [&](double tau) {
    BinomialBasis basis;
    basis.tau = tau;
    basis.lambda_lo = plan.lo;
    basis.lambda_hi = plan.hi;
    basis.flavor = BasisFlavor::Ihs;
    const int k = plan.params.k;
    std::vector<DenseMatrix> per_col;
    per_col.reserve(static_cast<std::size_t>(c.cols()));
    for (Index col = 0; col < c.cols(); ++col)
      per_col.push_back(ihs_basis_core(op, c.col(col), p, tau, k));
    basis.terms.assign(static_cast<std::size_t>(k),
                       DenseMatrix(c.rows(), c.cols()));
    for (int j = 0; j < k; ++j)
      for (Index col = 0; col < c.cols(); ++col)
        basis.terms[static_cast<std::size_t>(j)].col(col) =
            per_col[static_cast<std::size_t>(col)].col(j);
    return basis;
  };
  try {
    return attempt(plan.params.alpha);
  } catch (const BasisDivergedError&) {
    try {
      return attempt(plan.params.alpha / 2.0);
    } catch (const BasisDivergedError&) {
      throw SolverError("interval basis diverged twice, even at tau/2");
    }
  }
}

// Shared driver for the primal, dual and matrix-valued paths. `op` is the
// operator fed to the recursion, `c` the linear term, and `recover` maps a
// composed iterate to the reported solution (identity for the primal path,
// z -> A^T z for the dual).
template <typename Recover, typename LossFn>
RegPathResult run_path(const char* solver_name, const Matrix& op,
                       const DenseMatrix& c, const PathConfig& config,
                       const SketchSpec& spec, const RhoBounds& rho,
                       std::optional<double> sigma_d, Recover recover,
                       LossFn loss_fn) {
  const auto t_total = Clock::now();
  config.validate();
  rho.validate();

  RegPathResult result;
  result.solver = solver_name;

  auto t_setup = Clock::now();
  const SketchedMatrix sa = sketch_apply(spec, op);
  const SvdFactors svd = thin_svd(sa.product);
  const auto plans = plan_intervals(config, rho, sigma_d);
  Preconditioner pre = Preconditioner::build(
      svd, sa.product.rows(), sa.product.cols(), plans.front().params.lambda0);
  double setup = elapsed(t_setup);

  for (const auto& plan : plans) {
    t_setup = Clock::now();
    pre = pre.reshift(plan.params.lambda0);
    const BinomialBasis basis =
        build_interval_basis_matrix(op, c, pre, plan);
    setup += elapsed(t_setup);

    for (double lambda : plan.grid) {
      const auto t_eval = Clock::now();
      DenseMatrix x = compose_horner(basis, basis.tau * lambda);
      const double eval_seconds = elapsed(t_eval);
      PathPoint point;
      point.lambda = lambda;
      point.solution = recover(std::move(x));
      point.seconds = eval_seconds;
      loss_fn(point);
      result.points.push_back(std::move(point));
    }
  }
  result.setup_seconds = setup;
  result.total_seconds = elapsed(t_total);
  return result;
}

double sigma_max_sq_estimate(const Matrix& a) {
  // Power iteration on the gram operator; deterministic start.
  const Index d = a.cols();
  Vector v = Vector::Ones(d);
  v.normalize();
  double est = 0.0;
  for (int it = 0; it < 40; ++it) {
    Vector w = gram_apply(a, v);
    const double norm = w.norm();
    if (norm == 0.0) return 0.0;
    est = norm;
    v = w / norm;
  }
  return est;
}

}  // namespace

BinomialBasis gd_basis(const Matrix& a, const Vector& b, double tau, int k) {
  require(k >= 1, "gd_basis: k must be >= 1");
  if (k > 60)
    throw std::invalid_argument(
        "gd_basis: k > 60 overflows the binomial coefficients; use per-lambda "
        "gradient descent instead");
  require(tau > 0.0, "gd_basis: tau must be positive");
  require(b.size() == a.rows(), "gd_basis: dimension mismatch");

  const Index d = a.cols();
  BinomialBasis basis;
  basis.tau = tau;
  basis.flavor = BasisFlavor::Gd;
  basis.terms.assign(static_cast<std::size_t>(k), DenseMatrix::Zero(d, 1));

  Vector w = apply_transpose(a, b);
  for (int i = 0; i < k; ++i) {
    double coef = 1.0;  // C(i+j, j), advanced multiplicatively over j
    for (int j = 0; j + i <= k - 1; ++j) {
      basis.terms[static_cast<std::size_t>(j)].col(0) += coef * w;
      coef *= static_cast<double>(i + j + 1) / static_cast<double>(j + 1);
    }
    if (i + 1 < k) w -= tau * gram_apply(a, w);
  }
  return basis;
}

Vector gd_compose(const BinomialBasis& basis, double lambda) {
  require(basis.flavor == BasisFlavor::Gd, "gd_compose: wrong basis flavor");
  return compose_horner(basis, -basis.tau * lambda).col(0);
}

BinomialBasis ihs_basis(const Matrix& a, const Vector& b,
                        const Preconditioner& p, double tau, int k) {
  require(b.size() == a.rows(), "ihs_basis: dimension mismatch");
  const Vector c = apply_transpose(a, b);
  BinomialBasis basis;
  basis.tau = tau;
  basis.flavor = BasisFlavor::Ihs;
  basis.terms = split_columns(ihs_basis_core(a, c, p, tau, k));
  return basis;
}

Vector ihs_compose(const BinomialBasis& basis, double lambda) {
  require(basis.flavor == BasisFlavor::Ihs, "ihs_compose: wrong basis flavor");
  return compose_horner(basis, basis.tau * lambda).col(0);
}

BinomialBasis ihs_basis_matrix(const Matrix& a, const DenseMatrix& b,
                               const Preconditioner& p, double tau, int k) {
  require(b.rows() == a.rows(), "ihs_basis_matrix: dimension mismatch");
  require(b.cols() >= 1, "ihs_basis_matrix: empty right-hand side");
  BinomialBasis basis;
  basis.tau = tau;
  basis.flavor = BasisFlavor::Ihs;
  const int cols = static_cast<int>(b.cols());
  std::vector<DenseMatrix> per_col;
  per_col.reserve(static_cast<std::size_t>(cols));
  // Column by column through the exact vector code path, so the result is
  // bit-identical to K independent vector runs.
  for (int col = 0; col < cols; ++col) {
    const Vector c = apply_transpose(a, Vector(b.col(col)));
    per_col.push_back(ihs_basis_core(a, c, p, tau, k));
  }
  basis.terms.assign(static_cast<std::size_t>(k),
                     DenseMatrix(a.cols(), b.cols()));
  for (int j = 0; j < k; ++j)
    for (int col = 0; col < cols; ++col)
      basis.terms[static_cast<std::size_t>(j)].col(col) =
          per_col[static_cast<std::size_t>(col)].col(j);
  return basis;
}

DenseMatrix ihs_compose_matrix(const BinomialBasis& basis, double lambda) {
  require(basis.flavor == BasisFlavor::Ihs,
          "ihs_compose_matrix: wrong basis flavor");
  return compose_horner(basis, basis.tau * lambda);
}

RegPathResult ihs_bin_path(const Matrix& a, const Vector& b,
                           const PathConfig& config, const SketchSpec& spec,
                           const RhoBounds& rho, std::optional<double> sigma_d,
                           const Matrix* a_test, const Vector* b_test) {
  require(b.size() == a.rows(), "ihs_bin_path: dimension mismatch");
  require(spec.n == a.rows(), "ihs_bin_path: spec.n must equal A.rows");
  const DenseMatrix c = apply_transpose(a, Vector(b));
  return run_path(
      "ihs-bin", a, c, config, spec, rho, sigma_d,
      [](DenseMatrix x) { return x; },
      [&](PathPoint& point) {
        const LossPair lp = losses(a, b, a_test, b_test,
                                   Vector(point.solution.col(0)), point.lambda);
        point.train_loss = lp.train;
        point.test_loss = lp.test;
      });
}

RegPathResult ihs_bin_path_matrix(const Matrix& a, const DenseMatrix& b,
                                  const PathConfig& config,
                                  const SketchSpec& spec, const RhoBounds& rho,
                                  std::optional<double> sigma_d,
                                  const Matrix* a_test,
                                  const DenseMatrix* b_test) {
  require(b.rows() == a.rows(), "ihs_bin_path_matrix: dimension mismatch");
  require(spec.n == a.rows(), "ihs_bin_path_matrix: spec.n must equal A.rows");
  const DenseMatrix c = apply_transpose(a, b);
  RegPathResult result = run_path(
      "ihs-bin", a, c, config, spec, rho, sigma_d,
      [](DenseMatrix x) { return x; },
      [&](PathPoint& point) {
        const LossPair lp =
            losses_matrix(a, b, a_test, b_test, point.solution, point.lambda);
        point.train_loss = lp.train;
        point.test_loss = lp.test;
      });
  return result;
}

RegPathResult dual_path(const Matrix& a, const Vector& b,
                        const PathConfig& config, const SketchSpec& spec,
                        const RhoBounds& rho, std::optional<double> sigma_d,
                        const Matrix* a_test, const Vector* b_test) {
  require(b.size() == a.rows(), "dual_path: dimension mismatch");
  require(spec.n == a.cols(),
          "dual_path: spec.n must equal A.cols (the dual operator is A^T)");
  const auto t0 = Clock::now();
  const Matrix at = transpose(a);
  // Dual linear term is b itself: the stationarity system is
  // (A A^T + lambda I) z = b, i.e. the gram of A^T with no A^T factor on b.
  const DenseMatrix c = b;
  RegPathResult result = run_path(
      "dual", at, c, config, spec, rho, sigma_d,
      [&](DenseMatrix z) { return DenseMatrix(apply(at, z)); },
      [&](PathPoint& point) {
        const LossPair lp = losses(a, b, a_test, b_test,
                                   Vector(point.solution.col(0)), point.lambda);
        point.train_loss = lp.train;
        point.test_loss = lp.test;
      });
  result.total_seconds = elapsed(t0);
  return result;
}

RegPathResult gd_bin_path(const Matrix& a, const Vector& b,
                          const PathConfig& config, const Matrix* a_test,
                          const Vector* b_test) {
  const auto t_total = Clock::now();
  config.validate();
  require(b.size() == a.rows(), "gd_bin_path: dimension mismatch");

  RegPathResult result;
  result.solver = "gd-bin";

  const auto t_setup = Clock::now();
  const double smax_sq = sigma_max_sq_estimate(a) * 1.01;
  const double tau =
      1.9 / (smax_sq + config.lambda_max + config.lambda_min);
  // Worst per-step factor over the grid: curvatures range over
  // [lambda_min, smax_sq + lambda_max].
  const double rate =
      std::max(std::abs(1.0 - tau * (smax_sq + config.lambda_max)),
               1.0 - tau * config.lambda_min);
  const double needed =
      std::ceil(std::log(1.0 / config.epsilon) / -std::log(rate));

  if (needed <= 60.0) {
    const int k = std::max(2, static_cast<int>(needed));
    const BinomialBasis basis = gd_basis(a, b, tau, k);
    result.setup_seconds = elapsed(t_setup);
    for (double lambda : config.lambdas) {
      const auto t_eval = Clock::now();
      Vector x = gd_compose(basis, lambda);
      PathPoint point;
      point.seconds = elapsed(t_eval);
      point.lambda = lambda;
      const LossPair lp = losses(a, b, a_test, b_test, x, lambda);
      point.train_loss = lp.train;
      point.test_loss = lp.test;
      point.solution = x;
      result.points.push_back(std::move(point));
    }
  } else {
    // Budget exceeds the coefficient guard: plain per-lambda descent.
    const Vector atb = apply_transpose(a, Vector(b));
    const double grad_floor = config.epsilon * atb.norm();
    result.setup_seconds = elapsed(t_setup);
    for (double lambda : config.lambdas) {
      const auto t_eval = Clock::now();
      const double tau_l = 2.0 / (smax_sq + 2.0 * lambda);
      Vector x = Vector::Zero(a.cols());
      int iters = 0;
      const int cap = 200000;
      while (iters < cap) {
        Vector grad = gram_apply(a, x) + lambda * x - atb;
        if (grad.norm() <= grad_floor) break;
        x -= tau_l * grad;
        ++iters;
      }
      if (iters >= cap)
        throw SolverError("gd_bin_path: per-lambda descent hit iteration cap");
      PathPoint point;
      point.seconds = elapsed(t_eval);
      point.lambda = lambda;
      point.iterations = iters;
      const LossPair lp = losses(a, b, a_test, b_test, x, lambda);
      point.train_loss = lp.train;
      point.test_loss = lp.test;
      point.solution = x;
      result.points.push_back(std::move(point));
    }
  }
  result.total_seconds = elapsed(t_total);
  return result;
}

LossPair losses(const Matrix& a, const Vector& b, const Matrix* a_test,
                const Vector* b_test, const Vector& x, double lambda) {
  require(b.size() == a.rows() && x.size() == a.cols(),
          "losses: dimension mismatch");
  LossPair out;
  const Vector resid = apply(a, x) - b;
  out.train = 0.5 * resid.squaredNorm() + 0.5 * lambda * x.squaredNorm();
  if (a_test != nullptr && b_test != nullptr) {
    require(b_test->size() == a_test->rows() && x.size() == a_test->cols(),
            "losses: test dimension mismatch");
    const Vector test_resid = apply(*a_test, x) - *b_test;
    out.test = 0.5 * test_resid.squaredNorm();
  }
  return out;
}

LossPair losses_matrix(const Matrix& a, const DenseMatrix& b,
                       const Matrix* a_test, const DenseMatrix* b_test,
                       const DenseMatrix& x, double lambda) {
  require(b.rows() == a.rows() && x.rows() == a.cols() && x.cols() == b.cols(),
          "losses_matrix: dimension mismatch");
  LossPair out;
  const DenseMatrix resid = apply(a, x) - b;
  out.train = 0.5 * resid.squaredNorm() + 0.5 * lambda * x.squaredNorm();
  if (a_test != nullptr && b_test != nullptr) {
    const DenseMatrix test_resid = apply(*a_test, x) - *b_test;
    out.test = 0.5 * test_resid.squaredNorm();
  }
  return out;
}

std::uint64_t compose_axpy_count() {
  return g_compose_count.load(std::memory_order_relaxed);
}

void reset_compose_axpy_count() {
  g_compose_count.store(0, std::memory_order_relaxed);
}

}  // namespace ridgepath
