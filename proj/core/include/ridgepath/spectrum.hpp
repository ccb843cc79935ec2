#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ridgepath/matrix.hpp"

namespace ridgepath {

/// Regularization-path request: evaluation grid, target accuracy, interval
/// count (std::nullopt selects the automatic geometric split).
struct PathConfig {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  std::vector<double> lambdas;
  double epsilon = 1e-6;
  std::optional<int> num_intervals;  ///< nullopt = auto

  void validate() const;
};

/// T log-spaced grid points spanning [lambda_min, lambda_max].
std::vector<double> log_grid(double lambda_min, double lambda_max, int count);
std::vector<double> linear_grid(double lambda_min, double lambda_max,
                                int count);

enum class RhoProvenance { Gaussian, Sjlt, Srht, Identity, Manual };

/// Eigenvalue envelope [rho2, rho1] assumed for the sketched Gram factor.
struct RhoBounds {
  double rho1 = 1.0;
  double rho2 = 1.0;
  RhoProvenance provenance = RhoProvenance::Identity;

  void validate() const;
  static RhoBounds identity();
  static RhoBounds manual(double rho1, double rho2);
};

/// Per-interval solver tuning derived from the contraction analysis.
struct RateParams {
  double lambda0 = 0.0;   ///< shift used in the sketched Hessian
  double alpha = 0.0;     ///< fixed step size
  double kappa = 1.0;     ///< rho1*hi/(rho2*lo), shifted when sigma_d given
  double contraction = 0.0;  ///< bound on the per-step energy-error ratio
  int k = 1;              ///< iteration budget, clamped to [2, 64]
};

/// ||D||_F^2 / ||D||_2^2 with D = diag(sigma_i / sqrt(sigma_i^2 + lambda0)).
double effective_dimension(const Vector& sigma, double lambda0);

struct GaussianRhoResult {
  RhoBounds bounds;
  /// 1 - 16 exp(-eta^2 rho m / 2); present when m was supplied.
  std::optional<double> success_probability;
};

/// Envelope for a Gaussian sketch with oversampling rho = d_e/m and slack
/// eta in (0, (1-sqrt(rho))^2/4).
GaussianRhoResult rho_gaussian(double rho, double eta, double dnorm_sq,
                               std::optional<Index> m = std::nullopt);

struct SrhtRhoResult {
  RhoBounds bounds;
  /// C(n, d_e) * d_e * log(d_e) / rho; present when (n, d_e) were supplied.
  std::optional<Index> recommended_m;
};

SrhtRhoResult rho_srht(double rho, double dnorm_sq,
                       std::optional<std::pair<Index, double>> n_and_de =
                           std::nullopt);

struct SjltRhoResult {
  RhoBounds bounds;
  /// Theorem lower bounds with all implied constants set to one.
  std::optional<Index> recommended_m;
  std::optional<int> recommended_s;
};

SjltRhoResult rho_sjlt(double eps,
                       std::optional<std::tuple<double, double, double>>
                           alpha_delta_de = std::nullopt);

/// Tunes one interval [lambda_lo, lambda_hi]: the geometric-mean shift, the
/// balancing step size, and the iteration budget for target accuracy eps.
/// Supplying sigma_d (smallest singular value of A) shifts every lambda by
/// sigma_d^2, which tightens kappa.
RateParams tune_interval(double lambda_lo, double lambda_hi,
                         const RhoBounds& rho,
                         std::optional<double> sigma_d, double eps);

/// Geometric split of [lambda_min, lambda_max] into L consecutive intervals
/// with endpoints lambda_min * beta^(i/L). Auto (nullopt) uses
/// L = max(1, floor(2 ln beta)).
std::vector<std::pair<double, double>> interval_split(
    double lambda_min, double lambda_max,
    std::optional<int> num_intervals = std::nullopt);

int auto_interval_count(double lambda_min, double lambda_max);

}  // namespace ridgepath
