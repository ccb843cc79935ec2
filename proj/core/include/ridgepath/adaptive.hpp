#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "ridgepath/matrix.hpp"
#include "ridgepath/sketch.hpp"

namespace ridgepath {

struct AdaptiveConfig {
  double gamma1 = 0.5;    ///< backtracking factor
  double gamma2 = 1e-4;   ///< sufficient-decrease slope fraction
  double gamma3 = 0.9;    ///< stall threshold on successive progress values
  double epsilon = 1e-8;  ///< stop once the progress measure drops below this
  Index m_initial = 0;    ///< 0 selects max(16, d/64)
  Index m_cap = 0;        ///< 0 selects d; doubling saturates here
  int iteration_cap = 200;

  void validate(Index d) const;
  Index initial_m(Index d) const;
  Index cap_m(Index d) const;
};

/// Backtracking line search: returns gamma1^j for the smallest j >= 0 with
/// f(x - gamma1^j d) <= f(x) - gamma2 gamma1^j d.grad. Requires d.grad > 0;
/// gives up (throws SolverError) after 50 halvings.
double armijo_step(const std::function<double(const Vector&)>& f,
                   const Vector& x, const Vector& direction,
                   double dir_dot_grad, double gamma1, double gamma2);

struct AdaptiveStep {
  Index m = 0;
  double f_before = 0.0;
  double f_after = 0.0;
  double step = 0.0;
  double progress = 0.0;  ///< d_k . grad f(x_k) at the accepted point
  bool doubled = false;
};

struct AdaptiveResult {
  Index m = 0;            ///< final sketching dimension
  Vector x;               ///< final iterate
  int iterations = 0;     ///< accepted steps
  int doublings = 0;
  bool converged = false; ///< progress measure fell below epsilon
  bool stalled_at_cap = false;
  std::vector<AdaptiveStep> trace;
};

/// Estimates a sufficient sketching dimension by running sketched Newton
/// steps at lambda_min with Armijo steps, doubling m (and resampling the
/// sketch) whenever the progress measure d_k . grad f fails to shrink by
/// gamma3. The index does not advance on a doubling; the direction is
/// recomputed at the current point under the fresh sketch.
AdaptiveResult adaptive_sketch_dim(const Matrix& a, const Vector& b,
                                   double lambda_min,
                                   const AdaptiveConfig& config,
                                   const SketchSpec& spec_template,
                                   std::optional<Vector> x0 = std::nullopt);

}  // namespace ridgepath
