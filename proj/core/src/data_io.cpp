#include "ridgepath/data_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "ridgepath/rng.hpp"

namespace ridgepath {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

double parse_real(const std::string& token, std::size_t line, std::size_t col) {
  try {
    std::size_t used = 0;
    const double v = std::stod(token, &used);
    if (used != token.size())
      throw ParseError("trailing characters in number '" + token + "'", line,
                       col);
    if (!std::isfinite(v))
      throw ParseError("non-finite value '" + token + "'", line, col);
    return v;
  } catch (const std::invalid_argument&) {
    throw ParseError("malformed number '" + token + "'", line, col);
  } catch (const std::out_of_range&) {
    throw ParseError("number out of range '" + token + "'", line, col);
  }
}

}  // namespace

ParseError::ParseError(std::string message, std::size_t line,
                       std::size_t column)
    : std::runtime_error("line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

std::pair<CsrMatrix, Vector> parse_libsvm(std::istream& in,
                                          std::optional<Index> feature_override) {
  std::vector<Index> offsets{0};
  std::vector<Index> cols;
  std::vector<double> values;
  std::vector<double> labels;
  Index max_index = 0;

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line{raw};
    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);

    std::size_t pos = 0;
    auto skip_ws = [&] {
      while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos])))
        ++pos;
    };
    auto next_token = [&]() -> std::pair<std::string, std::size_t> {
      skip_ws();
      const std::size_t start = pos;
      while (pos < line.size() &&
             !std::isspace(static_cast<unsigned char>(line[pos])))
        ++pos;
      return {std::string(line.substr(start, pos - start)), start + 1};
    };

    auto [label_tok, label_col] = next_token();
    if (label_tok.empty()) continue;  // blank or comment-only line
    labels.push_back(parse_real(label_tok, line_no, label_col));

    Index prev_index = 0;
    while (true) {
      auto [tok, col_1based] = next_token();
      if (tok.empty()) break;
      const auto colon = tok.find(':');
      if (colon == std::string::npos || colon == 0 || colon + 1 == tok.size())
        throw ParseError("expected index:value, got '" + tok + "'", line_no,
                         col_1based);
      const std::string idx_part = tok.substr(0, colon);
      Index idx = 0;
      const auto [ptr, ec] =
          std::from_chars(idx_part.data(), idx_part.data() + idx_part.size(), idx);
      if (ec != std::errc{} || ptr != idx_part.data() + idx_part.size())
        throw ParseError("malformed feature index '" + idx_part + "'", line_no,
                         col_1based);
      if (idx < 1)
        throw ParseError("feature index must be >= 1, got " +
                             std::to_string(idx),
                         line_no, col_1based);
      if (idx <= prev_index)
        throw ParseError("non-increasing feature index " + std::to_string(idx),
                         line_no, col_1based);
      const double v =
          parse_real(tok.substr(colon + 1), line_no, col_1based + colon + 1);
      cols.push_back(idx - 1);  // to 0-based
      values.push_back(v);
      prev_index = idx;
      max_index = std::max(max_index, idx);
    }
    offsets.push_back(static_cast<Index>(values.size()));
  }

  Index ncols = feature_override.value_or(max_index);
  if (feature_override && *feature_override < max_index)
    throw std::invalid_argument(
        "parse_libsvm: declared dimension " + std::to_string(*feature_override) +
        " below max index " + std::to_string(max_index));
  const Index nrows = static_cast<Index>(labels.size());
  Vector b(nrows);
  for (Index i = 0; i < nrows; ++i) b[i] = labels[static_cast<std::size_t>(i)];
  return {CsrMatrix(nrows, ncols, std::move(offsets), std::move(cols),
                    std::move(values)),
          std::move(b)};
}

void write_libsvm(std::ostream& out, const CsrMatrix& matrix,
                  const Vector& labels) {
  require(labels.size() == matrix.rows(), "write_libsvm: label count mismatch");
  const auto& off = matrix.row_offsets();
  const auto& ci = matrix.col_indices();
  const auto& vals = matrix.values();
  for (Index r = 0; r < matrix.rows(); ++r) {
    out << format_double(labels[r]);
    for (Index p = off[r]; p < off[r + 1]; ++p)
      out << ' ' << (ci[p] + 1) << ':' << format_double(vals[p]);
    out << '\n';
  }
}

void write_libsvm(std::ostream& out, const Matrix& matrix, const Vector& labels) {
  if (matrix.is_dense())
    write_libsvm(out, CsrMatrix::from_dense(matrix.dense()), labels);
  else
    write_libsvm(out, matrix.csr(), labels);
}

Dataset load_libsvm_file(const std::string& path,
                         std::optional<Index> feature_override) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open data file: " + path);
  auto [m, b] = parse_libsvm(in, feature_override);
  Dataset out;
  out.a_train = Matrix(std::move(m));
  out.b_train = std::move(b);
  out.provenance = path;
  return out;
}

namespace {

// Exact product C g for the banded-correlation factor C_{ij} = ar^|i-j|,
// via forward/backward geometric recursions; O(d) per row.
void ar_correlation_product(double ar, std::vector<double>& fwd,
                            std::vector<double>& bwd, Vector& row) {
  const Index d = row.size();
  double acc = 0.0;
  for (Index i = 0; i < d; ++i) {
    acc = ar * acc + row[i];
    fwd[static_cast<std::size_t>(i)] = acc;
  }
  acc = 0.0;
  for (Index i = d - 1; i >= 0; --i) {
    acc = ar * acc + row[i];
    bwd[static_cast<std::size_t>(i)] = acc;
  }
  for (Index i = 0; i < d; ++i)
    row[i] = fwd[static_cast<std::size_t>(i)] + bwd[static_cast<std::size_t>(i)] -
             row[i];
}

DenseMatrix sample_correlated_rows(Index n, Index d, double ar, double scale,
                                   SeededRng& rng) {
  DenseMatrix out(n, d);
  std::vector<double> fwd(static_cast<std::size_t>(d));
  std::vector<double> bwd(static_cast<std::size_t>(d));
  Vector row(d);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < d; ++j) row[j] = rng.normal();
    ar_correlation_product(ar, fwd, bwd, row);
    out.row(i) = scale * row;
  }
  return out;
}

}  // namespace

Dataset gen_synthetic(Index n, Index d, double ar_coeff, double sigma_noise,
                      std::uint64_t seed) {
  require(n >= 1 && d >= 1, "gen_synthetic: n and d must be >= 1");
  require(ar_coeff > 0.0 && ar_coeff < 1.0, "gen_synthetic: alpha not in (0,1)");
  require(sigma_noise >= 0.0, "gen_synthetic: negative noise level");

  SeededRng rng(seed);
  Vector v_star(d);
  const double v_scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (Index j = 0; j < d; ++j) v_star[j] = v_scale * rng.normal();

  const double nd = static_cast<double>(n) * static_cast<double>(d);
  // Covariances are C^2/sqrt(nd) for train rows and C^2/(nd) for test rows,
  // as published; the exponents really do differ.
  const double train_scale = 1.0 / std::pow(nd, 0.25);
  const double test_scale = 1.0 / std::sqrt(nd);

  DenseMatrix a = sample_correlated_rows(n, d, ar_coeff, train_scale, rng);
  Vector b = a * v_star;
  for (Index i = 0; i < n; ++i) b[i] += sigma_noise * rng.normal();

  DenseMatrix a_test = sample_correlated_rows(n, d, ar_coeff, test_scale, rng);
  Vector b_test = a_test * v_star;
  for (Index i = 0; i < n; ++i) b_test[i] += sigma_noise * rng.normal();

  Dataset out;
  out.a_train = Matrix(std::move(a));
  out.b_train = std::move(b);
  out.a_test = Matrix(std::move(a_test));
  out.b_test = std::move(b_test);
  out.provenance = "synthetic(seed=" + std::to_string(seed) + ")";
  return out;
}

DenseMatrix gaussian_kernel_block(const DenseMatrix& rows_x,
                                  const DenseMatrix& rows_y, double bandwidth) {
  require(bandwidth > 0.0, "gaussian_kernel: bandwidth must be positive");
  require(rows_x.cols() == rows_y.cols(),
          "gaussian_kernel: point dimension mismatch");
  const double p = static_cast<double>(rows_x.cols());
  constexpr double pi = 3.1415926535897932384626433832795;
  const double norm_const = std::pow(2.0 * pi * bandwidth, -0.5 * p);
  const Vector xx = rows_x.rowwise().squaredNorm();
  const Vector yy = rows_y.rowwise().squaredNorm();
  DenseMatrix cross = rows_x * rows_y.transpose();
  for (Index i = 0; i < cross.rows(); ++i)
    for (Index j = 0; j < cross.cols(); ++j) {
      const double dist_sq = std::max(0.0, xx[i] + yy[j] - 2.0 * cross(i, j));
      cross(i, j) = norm_const * std::exp(-dist_sq / (2.0 * bandwidth));
    }
  return cross;
}

Dataset kernelize(const Dataset& points, double bandwidth) {
  const DenseMatrix train = points.a_train.to_dense();
  Dataset out;
  DenseMatrix k_train = gaussian_kernel_block(train, train, bandwidth);
  // The train block is symmetric by construction; enforce it exactly.
  k_train = ((k_train + k_train.transpose()) / 2.0).eval();
  out.a_train = Matrix(std::move(k_train));
  out.b_train = points.b_train;
  if (points.a_test) {
    out.a_test = Matrix(
        gaussian_kernel_block(points.a_test->to_dense(), train, bandwidth));
    out.b_test = points.b_test;
  }
  out.provenance = points.provenance + "+kernel(h=" + std::to_string(bandwidth) + ")";
  return out;
}

Matrix rescale_features(const Matrix& m) {
  if (m.is_dense()) {
    const DenseMatrix& dense = m.dense();
    const double lo = dense.minCoeff();
    const double hi = dense.maxCoeff();
    require(hi > lo, "rescale_features: constant matrix");
    // Already spanning [-1, 1] with both endpoints attained: keep bits.
    if (lo == -1.0 && hi == 1.0) return m;
    const double scale = 2.0 / (hi - lo);
    return Matrix(DenseMatrix(((dense.array() - lo) * scale - 1.0).matrix()));
  }
  const CsrMatrix& csr = m.csr();
  double max_abs = 0.0;
  for (double v : csr.values()) max_abs = std::max(max_abs, std::abs(v));
  require(max_abs > 0.0, "rescale_features: all-zero sparse matrix");
  std::vector<double> scaled = csr.values();
  for (double& v : scaled) v /= max_abs;
  return Matrix(CsrMatrix(csr.rows(), csr.cols(), csr.row_offsets(),
                          csr.col_indices(), std::move(scaled)));
}

Dataset split_half(const Matrix& a, const Vector& b, std::uint64_t seed) {
  require(a.rows() == b.size(), "split_half: label count mismatch");
  require(a.rows() >= 2, "split_half: need at least two rows");
  const Index n = a.rows();
  std::vector<Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), Index{0});
  SeededRng rng(seed);
  for (Index i = n - 1; i > 0; --i) {
    const Index j = static_cast<Index>(
        rng.uniform_index(static_cast<std::uint64_t>(i) + 1));
    std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
  }
  const Index n_train = (n + 1) / 2;

  auto gather = [&](Index begin, Index count) -> std::pair<Matrix, Vector> {
    Vector labels(count);
    for (Index i = 0; i < count; ++i)
      labels[i] = b[perm[static_cast<std::size_t>(begin + i)]];
    if (a.is_dense()) {
      DenseMatrix rows(count, a.cols());
      for (Index i = 0; i < count; ++i)
        rows.row(i) = a.dense().row(perm[static_cast<std::size_t>(begin + i)]);
      return {Matrix(std::move(rows)), std::move(labels)};
    }
    const CsrMatrix& csr = a.csr();
    std::vector<std::tuple<Index, Index, double>> trip;
    for (Index i = 0; i < count; ++i) {
      const Index src = perm[static_cast<std::size_t>(begin + i)];
      const auto& off = csr.row_offsets();
      for (Index p = off[src]; p < off[src + 1]; ++p)
        trip.emplace_back(i, csr.col_indices()[p], csr.values()[p]);
    }
    return {Matrix(CsrMatrix::from_triplets(count, a.cols(), std::move(trip))),
            std::move(labels)};
  };

  Dataset out;
  auto [train_m, train_b] = gather(0, n_train);
  auto [test_m, test_b] = gather(n_train, n - n_train);
  out.a_train = std::move(train_m);
  out.b_train = std::move(train_b);
  out.a_test = std::move(test_m);
  out.b_test = std::move(test_b);
  out.provenance = "split(seed=" + std::to_string(seed) + ")";
  return out;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_csv(std::ostream& out, const std::vector<RegPathResult>& results) {
  struct Row {
    double lambda;
    const std::string* solver;
    const PathPoint* point;
  };
  std::vector<Row> rows;
  for (const auto& res : results)
    for (const auto& pt : res.points) rows.push_back({pt.lambda, &res.solver, &pt});
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.lambda != b.lambda) return a.lambda < b.lambda;
    return *a.solver < *b.solver;
  });
  out << "lambda,train_loss,test_loss,time_s,solver\n";
  for (const Row& row : rows) {
    out << format_double(row.lambda) << ',' << format_double(row.point->train_loss)
        << ',';
    if (row.point->test_loss) out << format_double(*row.point->test_loss);
    out << ',' << format_double(row.point->seconds) << ',' << *row.solver << '\n';
  }
}

}  // namespace ridgepath
