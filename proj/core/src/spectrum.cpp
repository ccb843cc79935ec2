#include "ridgepath/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

namespace ridgepath {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

constexpr int kMaxBudget = 64;
constexpr int kMinBudget = 2;

}  // namespace

void PathConfig::validate() const {
  require(lambda_min > 0.0 && lambda_max > 0.0,
          "path config: lambda bounds must be positive");
  require(lambda_min < lambda_max,
          "path config: lambda_min must be below lambda_max");
  require(!lambdas.empty(), "path config: empty evaluation grid");
  require(epsilon > 0.0 && epsilon < 1.0, "path config: epsilon not in (0,1)");
  double prev = lambda_min;
  for (double l : lambdas) {
    require(l >= prev, "path config: grid must be sorted ascending");
    prev = l;
  }
  require(lambdas.front() >= lambda_min && lambdas.back() <= lambda_max,
          "path config: grid must lie within [lambda_min, lambda_max]");
  if (num_intervals) require(*num_intervals >= 1, "path config: L must be >= 1");
}

std::vector<double> log_grid(double lambda_min, double lambda_max, int count) {
  require(count >= 1, "log_grid: count must be >= 1");
  require(lambda_min > 0.0 && lambda_max >= lambda_min, "log_grid: bad range");
  std::vector<double> grid(static_cast<std::size_t>(count));
  if (count == 1) {
    grid[0] = lambda_min;
    return grid;
  }
  const double lr = std::log(lambda_max / lambda_min);
  for (int i = 0; i < count; ++i)
    grid[static_cast<std::size_t>(i)] =
        lambda_min * std::exp(lr * static_cast<double>(i) / (count - 1));
  grid.front() = lambda_min;
  grid.back() = lambda_max;
  return grid;
}

std::vector<double> linear_grid(double lambda_min, double lambda_max,
                                int count) {
  require(count >= 1, "linear_grid: count must be >= 1");
  std::vector<double> grid(static_cast<std::size_t>(count));
  if (count == 1) {
    grid[0] = lambda_min;
    return grid;
  }
  for (int i = 0; i < count; ++i)
    grid[static_cast<std::size_t>(i)] =
        lambda_min + (lambda_max - lambda_min) * static_cast<double>(i) /
                         (count - 1);
  grid.front() = lambda_min;
  grid.back() = lambda_max;
  return grid;
}

void RhoBounds::validate() const {
  require(rho2 > 0.0, "rho bounds: rho2 must be positive");
  require(rho1 >= rho2, "rho bounds: rho1 must be >= rho2");
  if (provenance == RhoProvenance::Identity)
    require(rho1 == 1.0 && rho2 == 1.0, "identity rho bounds must be (1,1)");
}

RhoBounds RhoBounds::identity() { return RhoBounds{1.0, 1.0, RhoProvenance::Identity}; }

RhoBounds RhoBounds::manual(double rho1, double rho2) {
  RhoBounds b{rho1, rho2, RhoProvenance::Manual};
  b.validate();
  return b;
}

double effective_dimension(const Vector& sigma, double lambda0) {
  require(sigma.size() > 0, "effective_dimension: empty spectrum");
  require(lambda0 >= 0.0, "effective_dimension: negative shift");
  double fro = 0.0;
  double top = 0.0;
  for (Index i = 0; i < sigma.size(); ++i) {
    const double s = sigma[i];
    require(s >= 0.0, "effective_dimension: negative singular value");
    if (s == 0.0) continue;
    const double dii_sq = s * s / (s * s + lambda0);
    fro += dii_sq;
    top = std::max(top, dii_sq);
  }
  require(top > 0.0, "effective_dimension: all-zero spectrum");
  return fro / top;
}

GaussianRhoResult rho_gaussian(double rho, double eta, double dnorm_sq,
                               std::optional<Index> m) {
  require(rho > 0.0 && rho < 1.0, "rho_gaussian: rho not in (0,1)");
  const double eta_cap = (1.0 - std::sqrt(rho)) * (1.0 - std::sqrt(rho)) / 4.0;
  require(eta > 0.0 && eta < eta_cap,
          "rho_gaussian: eta outside (0, (1-sqrt(rho))^2/4)");
  require(dnorm_sq > 0.0 && dnorm_sq <= 1.0,
          "rho_gaussian: ||D||^2 must lie in (0,1]");
  const double sq_eta = std::sqrt(eta);
  const double c_eta = std::pow((1.0 + sq_eta) / (1.0 - sq_eta), 2.0);
  const double up = (1.0 + std::sqrt(rho)) * (1.0 + sq_eta);
  const double down = 1.0 - std::sqrt(c_eta * rho);
  GaussianRhoResult out;
  out.bounds.rho1 = 1.0 - dnorm_sq + dnorm_sq * up * up;
  out.bounds.rho2 = 1.0 - dnorm_sq + dnorm_sq * down * down;
  out.bounds.provenance = RhoProvenance::Gaussian;
  out.bounds.validate();
  if (m) {
    out.success_probability =
        1.0 - 16.0 * std::exp(-eta * eta * rho * static_cast<double>(*m) / 2.0);
  }
  return out;
}

SrhtRhoResult rho_srht(double rho, double dnorm_sq,
                       std::optional<std::pair<Index, double>> n_and_de) {
  require(rho > 0.0 && rho < 1.0, "rho_srht: rho not in (0,1)");
  require(dnorm_sq > 0.0, "rho_srht: ||D||^2 must be positive");
  require(dnorm_sq * rho < 1.0, "rho_srht: ||D||^2 * rho must be below 1");
  SrhtRhoResult out;
  out.bounds.rho1 = 1.0 + dnorm_sq * rho;
  out.bounds.rho2 = 1.0 - dnorm_sq * rho;
  out.bounds.provenance = RhoProvenance::Srht;
  if (n_and_de) {
    const auto [n, de] = *n_and_de;
    require(n >= 1 && de >= 1.0, "rho_srht: bad (n, d_e)");
    const double c = 16.0 / 3.0 *
                     std::pow(1.0 + std::sqrt(8.0 * std::log(de * static_cast<double>(n)) / de),
                              2.0);
    out.recommended_m =
        static_cast<Index>(std::ceil(c * de * std::log(de) / rho));
  }
  return out;
}

SjltRhoResult rho_sjlt(
    double eps, std::optional<std::tuple<double, double, double>> alpha_delta_de) {
  require(eps > 0.0 && eps < 0.5, "rho_sjlt: eps not in (0, 1/2)");
  SjltRhoResult out;
  out.bounds.rho1 = 1.0 + eps;
  out.bounds.rho2 = 1.0 - eps;
  out.bounds.provenance = RhoProvenance::Sjlt;
  if (alpha_delta_de) {
    const auto [alpha, delta, de] = *alpha_delta_de;
    require(alpha > 2.0, "rho_sjlt: alpha must exceed 2");
    require(delta > 0.0 && delta < 0.5, "rho_sjlt: delta not in (0, 1/2)");
    require(de >= 1.0, "rho_sjlt: d_e must be >= 1");
    // Theorem orders with implied constants set to one; callers surface
    // these as recommendations, never as silently enforced minima.
    const double log_alpha = std::log(de / delta) / std::log(alpha);
    out.recommended_s = static_cast<int>(std::ceil(log_alpha / eps));
    out.recommended_m =
        static_cast<Index>(std::ceil(alpha * de * log_alpha / (eps * eps)));
  }
  return out;
}

RateParams tune_interval(double lambda_lo, double lambda_hi,
                         const RhoBounds& rho, std::optional<double> sigma_d,
                         double eps) {
  require(lambda_lo > 0.0, "tune_interval: lambda_lo must be positive");
  require(lambda_lo <= lambda_hi, "tune_interval: interval ordering violated");
  require(eps > 0.0 && eps < 1.0, "tune_interval: eps not in (0,1)");
  rho.validate();
  const double shift = sigma_d ? (*sigma_d) * (*sigma_d) : 0.0;
  require(shift >= 0.0, "tune_interval: sigma_d must be nonnegative");
  const double lo = lambda_lo + shift;
  const double hi = lambda_hi + shift;

  RateParams out;
  out.lambda0 = std::sqrt(lo * hi) - shift;
  out.kappa = rho.rho1 * hi / (rho.rho2 * lo);
  // Step size from the balancing identity: the two endpoint residuals
  // |1 - alpha (hi/l0s) / rho2| and |1 - alpha (lo/l0s) / rho1| coincide,
  // which yields the (kappa-1)/(kappa+1) rate.
  out.alpha = 2.0 * std::sqrt(lo * hi) / (lo / rho.rho1 + hi / rho.rho2);
  const double rate = (out.kappa - 1.0) / (out.kappa + 1.0);
  out.contraction = rate * rate;

  if (out.contraction <= 0.0) {
    out.k = kMinBudget;
  } else {
    const double per_step = -std::log(rate);  // = log(1/sqrt(contraction))
    const double raw = std::ceil(std::log(1.0 / eps) / per_step);
    const double clamped = std::clamp(raw, static_cast<double>(kMinBudget),
                                      static_cast<double>(kMaxBudget));
    out.k = static_cast<int>(clamped);
  }
  return out;
}

int auto_interval_count(double lambda_min, double lambda_max) {
  require(lambda_min > 0.0 && lambda_min < lambda_max,
          "interval_split: need 0 < lambda_min < lambda_max");
  const double beta = lambda_max / lambda_min;
  // Natural log; matches the O(log beta) accounting.
  return std::max(1, static_cast<int>(std::floor(2.0 * std::log(beta))));
}

std::vector<std::pair<double, double>> interval_split(
    double lambda_min, double lambda_max, std::optional<int> num_intervals) {
  require(lambda_min > 0.0 && lambda_min < lambda_max,
          "interval_split: need 0 < lambda_min < lambda_max");
  const int count =
      num_intervals ? *num_intervals : auto_interval_count(lambda_min, lambda_max);
  require(count >= 1, "interval_split: L must be >= 1");
  const double log_beta = std::log(lambda_max / lambda_min);
  std::vector<double> edges(static_cast<std::size_t>(count) + 1);
  for (int i = 0; i <= count; ++i)
    edges[static_cast<std::size_t>(i)] =
        lambda_min * std::exp(log_beta * static_cast<double>(i) / count);
  edges.front() = lambda_min;
  edges.back() = lambda_max;
  std::vector<std::pair<double, double>> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    out.emplace_back(edges[static_cast<std::size_t>(i)],
                     edges[static_cast<std::size_t>(i) + 1]);
  return out;
}

}  // namespace ridgepath
