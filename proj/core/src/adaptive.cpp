#include "ridgepath/adaptive.hpp"

#include <cmath>
#include <stdexcept>

#include "ridgepath/path_solver.hpp"
#include "ridgepath/preconditioner.hpp"

namespace ridgepath {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

void AdaptiveConfig::validate(Index d) const {
  require(gamma1 > 0.0 && gamma1 < 1.0, "adaptive: gamma1 not in (0,1)");
  require(gamma2 > 0.0 && gamma2 < 1.0, "adaptive: gamma2 not in (0,1)");
  require(gamma3 > 0.0 && gamma3 < 1.0, "adaptive: gamma3 not in (0,1)");
  require(epsilon > 0.0, "adaptive: epsilon must be positive");
  require(initial_m(d) >= 1, "adaptive: m_initial must be >= 1");
  require(cap_m(d) <= d, "adaptive: m_cap must not exceed d");
  require(initial_m(d) <= cap_m(d), "adaptive: m_initial above m_cap");
  require(iteration_cap >= 1, "adaptive: iteration cap must be >= 1");
}

Index AdaptiveConfig::initial_m(Index d) const {
  if (m_initial > 0) return m_initial;
  return std::max<Index>(16, d / 64);
}

Index AdaptiveConfig::cap_m(Index d) const {
  return m_cap > 0 ? m_cap : d;
}

double armijo_step(const std::function<double(const Vector&)>& f,
                   const Vector& x, const Vector& direction,
                   double dir_dot_grad, double gamma1, double gamma2) {
  require(dir_dot_grad > 0.0, "armijo: direction is not a descent direction");
  const double fx = f(x);
  double step = 1.0;
  for (int j = 0; j <= 50; ++j) {
    if (f(x - step * direction) <= fx - gamma2 * step * dir_dot_grad)
      return step;
    step *= gamma1;
  }
  throw SolverError("armijo: no acceptable step within 50 backtracks");
}

AdaptiveResult adaptive_sketch_dim(const Matrix& a, const Vector& b,
                                   double lambda_min,
                                   const AdaptiveConfig& config,
                                   const SketchSpec& spec_template,
                                   std::optional<Vector> x0) {
  require(lambda_min > 0.0, "adaptive: lambda_min must be positive");
  require(b.size() == a.rows(), "adaptive: dimension mismatch");
  const Index d = a.cols();
  config.validate(d);

  const Vector atb = apply_transpose(a, b);
  auto objective = [&](const Vector& x) {
    const Vector resid = apply(a, x) - b;
    return 0.5 * resid.squaredNorm() + 0.5 * lambda_min * x.squaredNorm();
  };
  auto gradient = [&](const Vector& x) {
    return Vector(gram_apply(a, x) + lambda_min * x - atb);
  };

  AdaptiveResult result;
  result.m = config.initial_m(d);
  const Index m_cap = config.cap_m(d);
  result.x = x0 ? std::move(*x0) : Vector::Zero(d);

  // Resample seeds are derived from the template seed and the doubling
  // count, so the whole (m, iteration) trace is a function of the inputs.
  auto make_pre = [&](Index m, int resample) {
    SketchSpec spec = spec_template.with_m(m).with_seed(
        spec_template.seed + 0x9e3779b97f4a7c15ull *
                                 static_cast<std::uint64_t>(resample));
    if (spec.kind == SketchKind::Identity) spec.m = spec.n;
    if (spec.kind == SketchKind::Sjlt && spec.m % spec.s != 0)
      spec.m += spec.s - spec.m % spec.s;
    return Preconditioner::build(sketch_apply(spec, a), lambda_min);
  };

  Preconditioner pre = make_pre(result.m, 0);
  Vector grad = gradient(result.x);
  Vector dir = pre.apply(grad);
  double progress = dir.dot(grad);

  int loop_guard = 0;
  while (progress >= config.epsilon) {
    if (result.iterations >= config.iteration_cap ||
        ++loop_guard > 4 * config.iteration_cap)
      break;

    const double step = armijo_step(objective, result.x, dir, progress,
                                    config.gamma1, config.gamma2);
    const Vector x_next = result.x - step * dir;
    const Vector grad_next = gradient(x_next);
    const Vector dir_next = pre.apply(grad_next);
    const double progress_next = dir_next.dot(grad_next);

    AdaptiveStep record;
    record.m = result.m;
    record.f_before = objective(result.x);
    record.f_after = objective(x_next);
    record.step = step;
    record.progress = progress;

    if (progress_next >= config.gamma3 * progress && result.m < m_cap) {
      // Insufficient progress: double the sketch, stay at the current
      // point and rebuild the direction under the fresh sketch.
      result.m = std::min(2 * result.m, m_cap);
      ++result.doublings;
      record.doubled = true;
      pre = make_pre(result.m, result.doublings);
      grad = gradient(result.x);
      dir = pre.apply(grad);
      progress = dir.dot(grad);
    } else {
      result.x = x_next;
      grad = grad_next;
      dir = dir_next;
      progress = progress_next;
      ++result.iterations;
    }
    result.trace.push_back(record);
  }

  result.converged = progress < config.epsilon;
  result.stalled_at_cap = !result.converged && result.m >= m_cap;
  return result;
}

}  // namespace ridgepath
