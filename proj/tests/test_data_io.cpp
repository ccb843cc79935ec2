#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <sstream>

#include "ridgepath/baselines.hpp"
#include "ridgepath/data_io.hpp"
#include "test_support.hpp"

using namespace ridgepath;
using namespace ridgepath::testing;

TEST_CASE("libsvm parsing of well-formed lines") {
  std::istringstream in("+1 2:0.5 4:-1.25\n3.5 1:1\n");
  const auto [m, labels] = parse_libsvm(in);
  CHECK(labels(0) == doctest::Approx(1.0));
  CHECK(labels(1) == doctest::Approx(3.5));
  CHECK(m.rows() == 2);
  CHECK(m.cols() == 4);
  const DenseMatrix dense = m.to_dense();
  CHECK(dense(0, 1) == doctest::Approx(0.5));
  CHECK(dense(0, 3) == doctest::Approx(-1.25));
  CHECK(dense(1, 0) == doctest::Approx(1.0));
}

TEST_CASE("libsvm parsing skips blanks and comments") {
  std::istringstream in("\n# header comment\n2 1:4 # trailing note\n\n");
  const auto [m, labels] = parse_libsvm(in);
  CHECK(m.rows() == 1);
  CHECK(labels(0) == doctest::Approx(2.0));
  CHECK(m.to_dense()(0, 0) == doctest::Approx(4.0));
}

TEST_CASE("libsvm parse errors carry line and column") {
  {
    std::istringstream in("1 3:1 2:1\n");
    try {
      parse_libsvm(in);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 1);
      CHECK(e.column() == 7);
      CHECK(std::string(e.what()).find("non-increasing") != std::string::npos);
    }
  }
  {
    std::istringstream in("ok 1:1\n1 0:5\n");
    try {
      parse_libsvm(in);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 1);  // the malformed label comes first
    }
  }
  {
    std::istringstream in("1 1:1\n1 0:5\n");
    try {
      parse_libsvm(in);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
      CHECK(std::string(e.what()).find(">= 1") != std::string::npos);
    }
  }
  {
    std::istringstream in("1 2:abc\n");
    CHECK_THROWS_AS(parse_libsvm(in), ParseError);
  }
}

TEST_CASE("libsvm round trip preserves the CSR content") {
  SeededRng rng(8);
  const CsrMatrix m = random_csr(12, 9, 0.3, rng);
  const Vector labels = random_vector(12, rng);
  std::stringstream buffer;
  write_libsvm(buffer, m, labels);
  const auto [back, labels_back] = parse_libsvm(buffer, m.cols());
  CHECK(back.rows() == m.rows());
  CHECK(back.cols() == m.cols());
  CHECK(back.row_offsets() == m.row_offsets());
  CHECK(back.col_indices() == m.col_indices());
  for (std::size_t i = 0; i < back.values().size(); ++i)
    CHECK(back.values()[i] == m.values()[i]);
  CHECK((labels_back - labels).lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("synthetic generator is reproducible and respects the noise model") {
  const Dataset a = gen_synthetic(50, 8, 0.99, 0.02, 42);
  const Dataset b = gen_synthetic(50, 8, 0.99, 0.02, 42);
  CHECK((a.a_train.dense() - b.a_train.dense()).lpNorm<Eigen::Infinity>() ==
        0.0);
  CHECK((a.b_train - b.b_train).lpNorm<Eigen::Infinity>() == 0.0);
  CHECK(a.a_test.has_value());

  // Noiseless labels lie exactly in the span: the regularized residual
  // vanishes as lambda goes to zero.
  const Dataset clean = gen_synthetic(60, 6, 0.9, 0.0, 7);
  const Vector x = ridge_solve_oracle(clean.a_train.dense(), clean.b_train,
                                      1e-12);
  const double resid =
      (clean.a_train.dense() * x - clean.b_train).norm() / clean.b_train.norm();
  CHECK(resid < 1e-8);
}

TEST_CASE("synthetic row covariance approaches the squared AR factor") {
  const Index n = 10000, d = 4;
  const double alpha = 0.99;
  const Dataset ds = gen_synthetic(n, d, alpha, 0.0, 123);
  const DenseMatrix& a = ds.a_train.dense();
  DenseMatrix cov = (a.transpose() * a) / static_cast<double>(n);

  DenseMatrix corr(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j)
      corr(i, j) = std::pow(alpha, std::abs(static_cast<double>(i - j)));
  const DenseMatrix expected =
      corr * corr / std::sqrt(static_cast<double>(n) * static_cast<double>(d));

  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j)
      CHECK(std::abs(cov(i, j) - expected(i, j)) <=
            0.05 * std::abs(expected(i, j)));
}

TEST_CASE("gaussian kernel values and structure") {
  DenseMatrix pts(3, 2);
  pts << 0.0, 0.0, 1.0, 2.0, -3.0, 0.5;
  const DenseMatrix k = gaussian_kernel_block(pts, pts, 1000.0);

  // Diagonal equals the zero-distance value (2 pi h)^(-d/2).
  const double at_zero = 1.0 / (2000.0 * 3.1415926535897932);
  for (Index i = 0; i < 3; ++i)
    CHECK(k(i, i) == doctest::Approx(at_zero).epsilon(1e-12));

  // Far points decay to zero.
  DenseMatrix far(2, 2);
  far << 0.0, 0.0, 1e5, 1e5;
  const DenseMatrix kf = gaussian_kernel_block(far, far, 1.0);
  CHECK(kf(0, 1) == doctest::Approx(0.0));

  // Symmetry and positive semidefiniteness of the train block.
  SeededRng rng(5);
  const DenseMatrix cloud = random_dense(20, 3, rng);
  Dataset pts_ds;
  pts_ds.a_train = Matrix{cloud};
  pts_ds.b_train = random_vector(20, rng);
  const Dataset kds = kernelize(pts_ds, 10.0);
  const DenseMatrix& kt = kds.a_train.dense();
  CHECK((kt - kt.transpose()).lpNorm<Eigen::Infinity>() < 1e-12);
  Eigen::SelfAdjointEigenSolver<DenseMatrix> eig(kt);
  CHECK(eig.eigenvalues().minCoeff() >= -1e-10);
}

TEST_CASE("feature rescaling") {
  DenseMatrix wide(2, 2);
  wide << 0.0, 10.0, 2.5, 5.0;
  const Matrix scaled = rescale_features(Matrix{wide});
  CHECK(scaled.dense().minCoeff() == doctest::Approx(-1.0));
  CHECK(scaled.dense().maxCoeff() == doctest::Approx(1.0));
  CHECK(scaled.dense()(1, 1) == doctest::Approx(0.0));  // midpoint 5 -> 0

  DenseMatrix already(2, 2);
  already << -1.0, 0.25, 0.5, 1.0;
  CHECK((rescale_features(Matrix{already}).dense() - already).norm() == 0.0);

  const CsrMatrix sparse =
      CsrMatrix::from_triplets(2, 3, {{0, 1, -4.0}, {1, 2, 2.0}});
  const Matrix csr_scaled = rescale_features(Matrix{sparse});
  CHECK(csr_scaled.csr().values()[0] == doctest::Approx(-1.0));
  CHECK(csr_scaled.csr().values()[1] == doctest::Approx(0.5));
  CHECK(csr_scaled.csr().nnz() == 2);  // zeros stay zero

  CHECK_THROWS_AS(rescale_features(Matrix{DenseMatrix::Ones(2, 2)}),
                  std::invalid_argument);
}

TEST_CASE("half split covers every row exactly once") {
  SeededRng rng(31);
  const DenseMatrix a = random_dense(9, 3, rng);
  const Vector b = random_vector(9, rng);
  const Dataset ds = split_half(Matrix{a}, b, 17);
  REQUIRE(ds.a_test.has_value());
  CHECK(ds.a_train.rows() == 5);
  CHECK(ds.a_test->rows() == 4);

  const Dataset again = split_half(Matrix{a}, b, 17);
  CHECK((ds.a_train.dense() - again.a_train.dense()).norm() == 0.0);

  // Union of the split labels is the original multiset.
  std::vector<double> seen;
  for (Index i = 0; i < ds.b_train.size(); ++i) seen.push_back(ds.b_train[i]);
  for (Index i = 0; i < ds.b_test->size(); ++i) seen.push_back((*ds.b_test)[i]);
  std::vector<double> want(b.data(), b.data() + b.size());
  std::sort(seen.begin(), seen.end());
  std::sort(want.begin(), want.end());
  CHECK(seen == want);

  const Dataset tiny = split_half(Matrix{random_dense(2, 2, rng)},
                                  Vector::Zero(2), 3);
  CHECK(tiny.a_train.rows() == 1);
  CHECK(tiny.a_test->rows() == 1);
  CHECK_THROWS_AS(split_half(Matrix{DenseMatrix::Ones(1, 1)}, Vector::Zero(1), 0),
                  std::invalid_argument);
}

TEST_CASE("csv output is sorted and carries 17 significant digits") {
  RegPathResult first;
  first.solver = "svd";
  RegPathResult second;
  second.solver = "direct";
  for (double lambda : {10.0, 1.0}) {
    PathPoint pt;
    pt.lambda = lambda;
    pt.train_loss = 1.0 / 3.0;
    pt.test_loss = lambda == 1.0 ? std::optional<double>(0.25) : std::nullopt;
    pt.seconds = 0.001;
    first.points.push_back(pt);
    second.points.push_back(pt);
  }
  std::stringstream out;
  write_csv(out, {first, second});
  std::string line;
  std::getline(out, line);
  CHECK(line == "lambda,train_loss,test_loss,time_s,solver");
  std::getline(out, line);
  CHECK(line.find("direct") != std::string::npos);  // λ=1: direct before svd
  CHECK(line.find("0.33333333333333331") != std::string::npos);
  CHECK(line.find("0.25") != std::string::npos);
  std::getline(out, line);
  CHECK(line.find("svd") != std::string::npos);
  std::getline(out, line);
  // λ=10 rows: the absent test loss leaves an empty field.
  CHECK(line.find(",,") != std::string::npos);
}
