#include <doctest.h>

#include <cmath>

#include "ridgepath/spectrum.hpp"

using namespace ridgepath;

TEST_CASE("effective dimension on hand-checked spectra") {
  Vector equal(2);
  equal << 1.0, 1.0;
  CHECK(effective_dimension(equal, 1.0) == doctest::Approx(2.0));

  Vector two(2);
  two << 2.0, 1.0;
  // ||D||_F^2 = 4/7 + 1/4, ||D||_2^2 = 4/7.
  CHECK(effective_dimension(two, 3.0) == doctest::Approx(23.0 / 16.0));

  Vector rank_one(2);
  rank_one << 3.0, 0.0;
  CHECK(effective_dimension(rank_one, 1.0) == doctest::Approx(1.0));

  CHECK_THROWS_AS(effective_dimension(Vector::Zero(3), 1.0),
                  std::invalid_argument);
}

TEST_CASE("effective dimension is monotone in the shift") {
  Vector sigma(4);
  sigma << 5.0, 2.0, 1.0, 0.5;
  double prev = effective_dimension(sigma, 0.0);
  CHECK(prev == doctest::Approx(4.0));  // equals d at zero shift
  for (double shift : {0.1, 1.0, 10.0, 100.0}) {
    const double cur = effective_dimension(sigma, shift);
    CHECK(cur <= prev + 1e-12);
    CHECK(cur >= 1.0);
    prev = cur;
  }
}

TEST_CASE("gaussian envelope formulas") {
  const auto at = rho_gaussian(0.25, 0.01, 1.0);
  CHECK(at.bounds.rho1 == doctest::Approx(2.7225).epsilon(1e-12));
  // Direct evaluation: c(eta) = (1.1/0.9)^2, rho2 = (1 - sqrt(c/4))^2 = 49/324.
  const double c = std::pow(1.1 / 0.9, 2.0);
  const double expect2 = std::pow(1.0 - std::sqrt(c * 0.25), 2.0);
  CHECK(at.bounds.rho2 == doctest::Approx(expect2).epsilon(1e-14));
  CHECK(at.bounds.rho2 == doctest::Approx(49.0 / 324.0).epsilon(1e-14));

  // Vanishing ||D||^2 drives both bounds to one.
  const auto limit = rho_gaussian(0.25, 0.01, 1e-12);
  CHECK(limit.bounds.rho1 == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(limit.bounds.rho2 == doctest::Approx(1.0).epsilon(1e-9));

  const auto half = rho_gaussian(0.04, 0.04, 0.5);
  CHECK(half.bounds.rho1 == doctest::Approx(1.5368).epsilon(1e-12));
  CHECK(half.bounds.rho2 == doctest::Approx(0.745).epsilon(1e-12));

  const auto with_m = rho_gaussian(0.25, 0.01, 1.0, 8000);
  CHECK(*with_m.success_probability ==
        doctest::Approx(1.0 - 16.0 * std::exp(-0.01 * 0.01 * 0.25 * 4000.0)));

  CHECK_THROWS_AS(rho_gaussian(0.25, 0.2, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(rho_gaussian(1.5, 0.01, 1.0), std::invalid_argument);
}

TEST_CASE("srht envelope formulas") {
  const auto basic = rho_srht(0.5, 1.0);
  CHECK(basic.bounds.rho1 == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(basic.bounds.rho2 == doctest::Approx(0.5).epsilon(1e-15));

  const auto tiny = rho_srht(1e-9, 1.0);
  CHECK(tiny.bounds.rho1 == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(tiny.bounds.rho2 == doctest::Approx(1.0).epsilon(1e-8));

  const auto scaled = rho_srht(0.2, 0.8);
  CHECK(scaled.bounds.rho1 == doctest::Approx(1.16).epsilon(1e-12));
  CHECK(scaled.bounds.rho2 == doctest::Approx(0.84).epsilon(1e-12));

  const auto with_m = rho_srht(0.5, 1.0, std::make_pair(Index{1024}, 50.0));
  const double c =
      16.0 / 3.0 * std::pow(1.0 + std::sqrt(8.0 * std::log(50.0 * 1024.0) / 50.0), 2.0);
  CHECK(*with_m.recommended_m ==
        static_cast<Index>(std::ceil(c * 50.0 * std::log(50.0) / 0.5)));

  CHECK_THROWS_AS(rho_srht(0.9, 1.2), std::invalid_argument);
}

TEST_CASE("sjlt envelope and recommended sizes") {
  const auto basic = rho_sjlt(0.25);
  CHECK(basic.bounds.rho1 == doctest::Approx(1.25).epsilon(1e-15));
  CHECK(basic.bounds.rho2 == doctest::Approx(0.75).epsilon(1e-15));

  const auto tiny = rho_sjlt(1e-9);
  CHECK(tiny.bounds.rho1 == doctest::Approx(1.0).epsilon(1e-8));

  // Oracle: direct evaluation of the order expressions at unit constants.
  const auto rec = rho_sjlt(0.25, std::make_tuple(4.0, 0.1, 100.0));
  const double log_term = std::log(100.0 / 0.1) / std::log(4.0);
  CHECK(*rec.recommended_s == static_cast<int>(std::ceil(log_term / 0.25)));
  CHECK(*rec.recommended_s == 20);
  CHECK(*rec.recommended_m ==
        static_cast<Index>(std::ceil(4.0 * 100.0 * log_term / 0.0625)));
  CHECK(*rec.recommended_m == 31891);

  CHECK_THROWS_AS(rho_sjlt(0.6), std::invalid_argument);
}

TEST_CASE("tune_interval reproduces the contraction quantities") {
  const RateParams p = tune_interval(1.0, 100.0, RhoBounds::identity(),
                                     std::nullopt, 1e-6);
  CHECK(p.lambda0 == doctest::Approx(10.0).epsilon(1e-14));
  CHECK(p.kappa == doctest::Approx(100.0).epsilon(1e-14));
  CHECK(p.alpha == doctest::Approx(20.0 / 101.0).epsilon(1e-14));
  CHECK(std::sqrt(p.contraction) == doctest::Approx(99.0 / 101.0).epsilon(1e-14));

  const RateParams degenerate =
      tune_interval(5.0, 5.0, RhoBounds::identity(), std::nullopt, 1e-6);
  CHECK(degenerate.kappa == doctest::Approx(1.0));
  CHECK(degenerate.contraction == doctest::Approx(0.0));
  CHECK(degenerate.alpha == doctest::Approx(1.0 / 5.0).epsilon(1e-14));
  CHECK(degenerate.k == 2);

  const RateParams shifted = tune_interval(
      1.0, 100.0, RhoBounds::identity(), std::sqrt(10.0), 1e-6);
  CHECK(shifted.lambda0 == doctest::Approx(std::sqrt(1210.0) - 10.0).epsilon(1e-14));
  CHECK(shifted.kappa == doctest::Approx(10.0).epsilon(1e-14));
  CHECK(std::sqrt(shifted.contraction) ==
        doctest::Approx(9.0 / 11.0).epsilon(1e-14));
}

TEST_CASE("tune_interval balances the endpoint residuals") {
  std::uint64_t state = 12345;
  auto next = [&state] {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    return static_cast<double>(state >> 11) / 9007199254740992.0;
  };
  for (int trial = 0; trial < 50; ++trial) {
    const double lo = 0.1 + 10.0 * next();
    const double hi = lo * (1.0 + 50.0 * next());
    const double rho2 = 0.2 + next();
    const double rho1 = rho2 + next();
    const auto rho = RhoBounds::manual(rho1, rho2);
    const double shift = trial % 2 == 0 ? 0.0 : 3.0 * next();
    const auto p = tune_interval(lo, hi, rho,
                                 shift > 0 ? std::optional<double>(std::sqrt(shift))
                                           : std::nullopt,
                                 1e-8);
    const double center = p.lambda0 + shift;
    const double r_hi = std::abs(1.0 - p.alpha * (hi + shift) / center / rho2);
    const double r_lo = std::abs(1.0 - p.alpha * (lo + shift) / center / rho1);
    CHECK(std::abs(r_hi - r_lo) < 1e-12);
    // The balanced residual is the advertised rate.
    CHECK(r_hi == doctest::Approx(std::sqrt(p.contraction)).epsilon(1e-10));
  }
}

TEST_CASE("contraction is monotone in the interval ratio") {
  const auto rho = RhoBounds::manual(1.3, 0.8);
  double prev = -1.0;
  for (double ratio : {1.0, 1.5, 2.0, 5.0, 10.0, 100.0}) {
    const auto p = tune_interval(1.0, ratio, rho, std::nullopt, 1e-6);
    CHECK(p.contraction >= prev);
    prev = p.contraction;
  }
}

TEST_CASE("iteration budget respects the clamp") {
  // kappa = 100 with identity bounds: rate 99/101, about 9.8 steps per decade
  // of accuracy.
  const auto p = tune_interval(1.0, 100.0, RhoBounds::identity(), std::nullopt,
                               1e-6);
  const double per_step = -std::log(99.0 / 101.0);
  const int expect =
      static_cast<int>(std::ceil(std::log(1e6) / per_step));
  CHECK(p.k == expect);

  const auto capped = tune_interval(1.0, 1e9, RhoBounds::identity(),
                                    std::nullopt, 1e-12);
  CHECK(capped.k == 64);
}

TEST_CASE("interval_split builds the geometric ladder") {
  const auto autos = interval_split(1.0, 100.0);
  CHECK(autos.size() == 9);  // floor(2 ln 100) = 9
  CHECK(autos.front().first == doctest::Approx(1.0));
  CHECK(autos.back().second == doctest::Approx(100.0));
  CHECK(autos.front().second == doctest::Approx(std::pow(100.0, 1.0 / 9.0)).epsilon(1e-12));

  const auto two = interval_split(1.0, 100.0, 2);
  CHECK(two.size() == 2);
  CHECK(two[0].second == doctest::Approx(10.0).epsilon(1e-14));
  CHECK(two[1].first == doctest::Approx(10.0).epsilon(1e-14));

  // Near-degenerate range collapses to a single interval.
  const auto tiny = interval_split(1.0, 1.0 + 1e-12);
  CHECK(tiny.size() == 1);

  // Consecutive ratios are constant.
  const auto many = interval_split(0.5, 350.0, 11);
  const double ratio = many[0].second / many[0].first;
  for (const auto& [lo, hi] : many)
    CHECK(hi / lo == doctest::Approx(ratio).epsilon(1e-12));

  CHECK_THROWS_AS(interval_split(2.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(interval_split(0.0, 1.0), std::invalid_argument);
}

TEST_CASE("grids and config validation") {
  const auto grid = log_grid(1.0, 100.0, 3);
  CHECK(grid.size() == 3);
  CHECK(grid[0] == doctest::Approx(1.0));
  CHECK(grid[1] == doctest::Approx(10.0));
  CHECK(grid[2] == doctest::Approx(100.0));

  const auto lin = linear_grid(0.0, 10.0, 5);
  CHECK(lin[1] == doctest::Approx(2.5));

  PathConfig cfg;
  cfg.lambda_min = 1.0;
  cfg.lambda_max = 100.0;
  cfg.lambdas = grid;
  cfg.epsilon = 1e-6;
  CHECK_NOTHROW(cfg.validate());

  cfg.epsilon = 2.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.epsilon = 1e-6;
  cfg.lambdas = {50.0, 20.0};
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.lambdas = {0.5, 20.0};
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("rho bounds validation") {
  CHECK_THROWS_AS(RhoBounds::manual(0.5, 0.8), std::invalid_argument);
  CHECK_THROWS_AS(RhoBounds::manual(1.0, -0.1), std::invalid_argument);
  CHECK_NOTHROW(RhoBounds::identity().validate());
}
