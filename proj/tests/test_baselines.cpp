#include <doctest.h>

#include <algorithm>

#include "ridgepath/baselines.hpp"
#include "test_support.hpp"

using namespace ridgepath;
using namespace ridgepath::testing;

namespace {

PathConfig make_config(double lo, double hi, std::vector<double> grid,
                       double eps) {
  PathConfig cfg;
  cfg.lambda_min = lo;
  cfg.lambda_max = hi;
  cfg.lambdas = std::move(grid);
  cfg.epsilon = eps;
  return cfg;
}

SketchSpec gaussian_spec(Index m, Index n, std::uint64_t seed) {
  SketchSpec spec;
  spec.kind = SketchKind::Gaussian;
  spec.m = m;
  spec.n = n;
  spec.seed = seed;
  return spec;
}

SketchSpec identity_spec(Index n) {
  SketchSpec spec;
  spec.kind = SketchKind::Identity;
  spec.m = n;
  spec.n = n;
  return spec;
}

}  // namespace

TEST_CASE("svd path on scalars and the ridge limit") {
  const Matrix a{DenseMatrix{{2.0}}};
  const Vector b = Vector::Constant(1, 4.0);
  const PathConfig cfg = make_config(1.0, 1e7, {1.0, 1e7}, 1e-8);
  const RegPathResult path = svd_path(a, b, cfg);
  CHECK(path.points[0].solution(0, 0) == doctest::Approx(1.6));
  // Large lambda shrinks the solution toward zero.
  CHECK(std::abs(path.points[1].solution(0, 0)) < 1e-5);
}

TEST_CASE("svd and direct paths match the normal-equations oracle") {
  SeededRng rng(3);
  const DenseMatrix ad = random_dense(30, 8, rng);
  const Matrix a{ad};
  const Vector b = random_vector(30, rng);
  const PathConfig cfg = make_config(0.5, 20.0, log_grid(0.5, 20.0, 6), 1e-8);

  for (const RegPathResult& path :
       {svd_path(a, b, cfg), direct_path(a, b, cfg)}) {
    for (const auto& pt : path.points) {
      const Vector want = ridge_solve_oracle(ad, b, pt.lambda);
      CHECK(rel_error(Vector(pt.solution.col(0)), want) < 1e-10);
    }
  }
}

TEST_CASE("warm cg: repeated lambda solves for free, identity in one step") {
  SeededRng rng(9);
  const DenseMatrix ad = random_dense(25, 6, rng);
  const Matrix a{ad};
  const Vector b = random_vector(25, rng);

  // Duplicated grid point: the second solve starts at the optimum.
  const PathConfig twice = make_config(2.0, 3.0, {2.5, 2.5}, 1e-10);
  const RegPathResult dup = warm_cg_path(a, b, twice);
  CHECK(dup.points[1].iterations == 0);

  // Identity data matrix: condition number one, a single CG step.
  const Matrix eye{DenseMatrix(DenseMatrix::Identity(12, 12))};
  const Vector be = random_vector(12, rng);
  const PathConfig one = make_config(1.0, 2.0, {1.5}, 1e-10);
  const RegPathResult ident = warm_cg_path(eye, be, one);
  CHECK(ident.points[0].iterations == 1);
}

TEST_CASE("warm cg matches the svd oracle on a random instance") {
  SeededRng rng(10);
  const DenseMatrix ad = random_dense(100, 30, rng);
  const Matrix a{ad};
  const Vector b = random_vector(100, rng);
  const PathConfig cfg = make_config(1.0, 100.0, log_grid(1.0, 100.0, 10), 1e-8);
  const RegPathResult cg = warm_cg_path(a, b, cfg);
  const RegPathResult svd = svd_path(a, b, cfg);
  for (std::size_t i = 0; i < cg.points.size(); ++i) {
    CHECK(cg.points[i].lambda == svd.points[i].lambda);
    CHECK(rel_error(Vector(cg.points[i].solution.col(0)),
                    Vector(svd.points[i].solution.col(0))) < 1e-6);
  }
}

TEST_CASE("warm ihs: identity sketch is one Newton step; warm start is free") {
  SeededRng rng(12);
  const DenseMatrix ad = random_dense(30, 7, rng);
  const Matrix a{ad};
  const Vector b = random_vector(30, rng);

  const PathConfig one = make_config(1.0, 2.0, {1.5}, 1e-8);
  const RegPathResult newton =
      warm_ihs_path(a, b, one, identity_spec(30), RhoBounds::identity());
  CHECK(newton.points[0].iterations == 1);

  const PathConfig twice = make_config(1.0, 2.0, {1.5, 1.5}, 1e-8);
  const RegPathResult dup =
      warm_ihs_path(a, b, twice, identity_spec(30), RhoBounds::identity());
  CHECK(dup.points[1].iterations == 0);
}

TEST_CASE("warm ihs matches the svd oracle under a real sketch") {
  SeededRng rng(14);
  const DenseMatrix ad = random_dense(80, 12, rng);
  const Matrix a{ad};
  const Vector b = random_vector(80, rng);
  const PathConfig cfg = make_config(1.0, 50.0, log_grid(1.0, 50.0, 8), 1e-8);
  const RegPathResult ihs = warm_ihs_path(
      a, b, cfg, gaussian_spec(36, 80, 5), RhoBounds::manual(1.6, 0.55));
  const RegPathResult svd = svd_path(a, b, cfg);
  for (std::size_t i = 0; i < ihs.points.size(); ++i)
    CHECK(rel_error(Vector(ihs.points[i].solution.col(0)),
                    Vector(svd.points[i].solution.col(0))) < 1e-6);
}

TEST_CASE("all four baselines agree pairwise") {
  SeededRng rng(20);
  const DenseMatrix ad = random_dense(60, 15, rng);
  const Matrix a{ad};
  const Vector b = random_vector(60, rng);
  const double eps = 1e-8;
  const PathConfig cfg = make_config(1.0, 30.0, log_grid(1.0, 30.0, 7), eps);

  const std::vector<RegPathResult> all = {
      svd_path(a, b, cfg), direct_path(a, b, cfg), warm_cg_path(a, b, cfg),
      warm_ihs_path(a, b, cfg, gaussian_spec(30, 60, 8),
                    RhoBounds::manual(1.6, 0.55))};
  const double tol = std::max(10.0 * eps, 1e-8);
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j)
      for (std::size_t t = 0; t < all[i].points.size(); ++t)
        CHECK(rel_error(Vector(all[i].points[t].solution.col(0)),
                        Vector(all[j].points[t].solution.col(0))) < 10 * tol);
}

TEST_CASE("warm cg iteration counts trend down along the sweep") {
  // Median over seeds of the per-position iteration counts along the
  // decreasing-lambda sweep: later (smaller-lambda) solves should not need
  // more iterations than the cold start at the top of the path.
  const int seeds = 5;
  const int grid_size = 8;
  std::vector<std::vector<int>> iter_rows;
  for (int seed = 0; seed < seeds; ++seed) {
    SeededRng rng(100 + static_cast<std::uint64_t>(seed));
    const DenseMatrix ad = random_dense(50, 12, rng);
    const Matrix a{ad};
    const Vector b = random_vector(50, rng);
    const PathConfig cfg =
        make_config(1.0, 100.0, log_grid(1.0, 100.0, grid_size), 1e-8);
    const RegPathResult cg = warm_cg_path(a, b, cfg);
    std::vector<int> iters;
    for (auto it = cg.points.rbegin(); it != cg.points.rend(); ++it)
      iters.push_back(it->iterations);  // sweep order: largest lambda first
    iter_rows.push_back(std::move(iters));
  }
  auto median_at = [&](int pos) {
    std::vector<int> v;
    for (const auto& row : iter_rows) v.push_back(row[static_cast<std::size_t>(pos)]);
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
  };
  const int first = median_at(0);
  for (int pos = 1; pos < grid_size; ++pos) CHECK(median_at(pos) <= first);
}

