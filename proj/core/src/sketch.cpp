#include "ridgepath/sketch.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ridgepath/rng.hpp"

namespace ridgepath {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// ---- SRHT helpers ----------------------------------------------------------

// In-place Walsh-Hadamard butterfly over x[0..len), descending recursion,
// restricted to the subtrees that contain a requested output index.
// targets is a sorted range of (output index, slot) pairs; results land in
// out[slot]. Cost O(len log(#targets) + #targets).
void fwht_select(double* x, Index len,
                 const std::pair<Index, Index>* tb,
                 const std::pair<Index, Index>* te, Index base, double scale,
                 double* out) {
  if (tb == te) return;
  if (len == 1) {
    for (auto* t = tb; t != te; ++t) out[t->second] = x[0] * scale;
    return;
  }
  const Index h = len / 2;
  for (Index i = 0; i < h; ++i) {
    const double a = x[i];
    const double b = x[i + h];
    x[i] = a + b;
    x[i + h] = a - b;
  }
  const Index mid = base + h;
  auto* split = std::lower_bound(
      tb, te, mid, [](const std::pair<Index, Index>& p, Index v) {
        return p.first < v;
      });
  fwht_select(x, h, tb, split, base, scale, out);
  fwht_select(x + h, h, split, te, mid, scale, out);
}

double hadamard_entry(Index row, Index col) {
  return (std::popcount(static_cast<std::uint64_t>(row & col)) & 1) ? -1.0
                                                                    : 1.0;
}

struct SrhtDraws {
  std::vector<double> signs;       // one per input row
  std::vector<Index> sample_rows;  // m distinct rows of the padded Hadamard
};

// Draw order: sign diagonal first (row order), then the row subset by a
// partial Fisher-Yates pass, kept in draw order.
SrhtDraws draw_srht(const SketchSpec& spec) {
  SeededRng rng(spec.seed);
  const Index npad = hadamard_pad(spec.n);
  SrhtDraws d;
  d.signs.resize(static_cast<std::size_t>(spec.n));
  for (Index i = 0; i < spec.n; ++i) d.signs[i] = rng.sign();
  std::vector<Index> pool(static_cast<std::size_t>(npad));
  std::iota(pool.begin(), pool.end(), Index{0});
  d.sample_rows.resize(static_cast<std::size_t>(spec.m));
  for (Index i = 0; i < spec.m; ++i) {
    const Index j =
        i + static_cast<Index>(rng.uniform_index(
                static_cast<std::uint64_t>(npad - i)));
    std::swap(pool[i], pool[j]);
    d.sample_rows[i] = pool[i];
  }
  return d;
}

// ---- per-family sketch application -----------------------------------------

DenseMatrix apply_gaussian(const SketchSpec& spec, const Matrix& a) {
  SeededRng rng(spec.seed);
  const Index d = a.cols();
  const double scale = 1.0 / std::sqrt(static_cast<double>(spec.m));
  DenseMatrix out = DenseMatrix::Zero(spec.m, d);
  // Entries drawn row-major over S; rows processed in chunks so the dense
  // path can use GEMM while preserving the draw order.
  const Index chunk = 64;
  DenseMatrix srow(chunk, spec.n);
  for (Index r0 = 0; r0 < spec.m; r0 += chunk) {
    const Index rc = std::min(chunk, spec.m - r0);
    for (Index r = 0; r < rc; ++r)
      for (Index j = 0; j < spec.n; ++j) srow(r, j) = scale * rng.normal();
    if (a.is_dense()) {
      out.middleRows(r0, rc).noalias() = srow.topRows(rc) * a.dense();
    } else {
      const CsrMatrix& m = a.csr();
      const auto& off = m.row_offsets();
      const auto& ci = m.col_indices();
      const auto& vals = m.values();
      for (Index j = 0; j < spec.n; ++j)
        for (Index p = off[j]; p < off[j + 1]; ++p)
          out.col(ci[p]).segment(r0, rc) += vals[p] * srow.col(j).head(rc);
    }
  }
  return out;
}

// CountSketch and SJLT share the draw loop: for each block, one
// (bucket, sign) pair per input row, in row order. CountSketch is the
// single-block case with unit scaling.
DenseMatrix apply_count_blocks(const SketchSpec& spec, const Matrix& a,
                               int blocks, double entry) {
  SeededRng rng(spec.seed);
  const Index rows_per_block = spec.m / blocks;
  DenseMatrix out = DenseMatrix::Zero(spec.m, a.cols());
  for (int b = 0; b < blocks; ++b) {
    const Index base = b * rows_per_block;
    for (Index j = 0; j < spec.n; ++j) {
      const Index h = static_cast<Index>(
          rng.uniform_index(static_cast<std::uint64_t>(rows_per_block)));
      const double sgn = rng.sign() * entry;
      if (a.is_dense()) {
        out.row(base + h) += sgn * a.dense().row(j);
      } else {
        const CsrMatrix& m = a.csr();
        const auto& off = m.row_offsets();
        for (Index p = off[j]; p < off[j + 1]; ++p)
          out(base + h, m.col_indices()[p]) += sgn * m.values()[p];
      }
    }
  }
  return out;
}

DenseMatrix apply_srht(const SketchSpec& spec, const Matrix& a) {
  const SrhtDraws draws = draw_srht(spec);
  const Index npad = hadamard_pad(spec.n);
  const Index d = a.cols();
  // S = sqrt(npad/m) * P * (H/sqrt(npad)) * D, hence every entry is +-1/sqrt(m).
  const double scale = 1.0 / std::sqrt(static_cast<double>(spec.m));

  std::vector<std::pair<Index, Index>> targets(
      static_cast<std::size_t>(spec.m));
  for (Index r = 0; r < spec.m; ++r) targets[r] = {draws.sample_rows[r], r};
  std::sort(targets.begin(), targets.end());

  DenseMatrix out(spec.m, d);
  std::vector<double> col(static_cast<std::size_t>(npad));
  // Column-major sweep over A; CSR columns are gathered through a transpose.
  const bool dense = a.is_dense();
  CsrMatrix at;
  if (!dense) at = a.csr().transposed();
  for (Index c = 0; c < d; ++c) {
    std::fill(col.begin(), col.end(), 0.0);
    if (dense) {
      for (Index i = 0; i < spec.n; ++i) col[i] = draws.signs[i] * a.dense()(i, c);
    } else {
      const auto& off = at.row_offsets();
      for (Index p = off[c]; p < off[c + 1]; ++p) {
        const Index i = at.col_indices()[p];
        col[i] = draws.signs[i] * at.values()[p];
      }
    }
    Vector res(spec.m);
    fwht_select(col.data(), npad, targets.data(),
                targets.data() + targets.size(), 0, scale, res.data());
    out.col(c) = res;
  }
  return out;
}

}  // namespace

std::string to_string(SketchKind kind) {
  switch (kind) {
    case SketchKind::Gaussian: return "gaussian";
    case SketchKind::CountSketch: return "countsketch";
    case SketchKind::Sjlt: return "sjlt";
    case SketchKind::Srht: return "srht";
    case SketchKind::Identity: return "identity";
  }
  return "unknown";
}

SketchKind sketch_kind_from_string(const std::string& name) {
  if (name == "gaussian") return SketchKind::Gaussian;
  if (name == "countsketch") return SketchKind::CountSketch;
  if (name == "sjlt") return SketchKind::Sjlt;
  if (name == "srht") return SketchKind::Srht;
  if (name == "identity") return SketchKind::Identity;
  throw std::invalid_argument("unknown sketch kind: " + name);
}

Index hadamard_pad(Index n) {
  return static_cast<Index>(
      std::bit_ceil(static_cast<std::uint64_t>(std::max<Index>(n, 1))));
}

void SketchSpec::validate() const {
  require(n >= 1, "sketch: n must be positive");
  require(m >= 1, "sketch: m must be positive");
  if (kind == SketchKind::Sjlt) {
    require(s >= 1, "sjlt: sparsity must be >= 1");
    require(m % s == 0, "sjlt: sparsity must divide m");
  }
  if (kind == SketchKind::Identity)
    require(m == n, "identity sketch: m must equal n");
}

SketchSpec SketchSpec::with_m(Index new_m) const {
  SketchSpec out = *this;
  out.m = new_m;
  return out;
}

SketchSpec SketchSpec::with_seed(std::uint64_t new_seed) const {
  SketchSpec out = *this;
  out.seed = new_seed;
  return out;
}

SketchedMatrix sketch_apply(const SketchSpec& spec, const Matrix& a) {
  spec.validate();
  require(a.rows() == spec.n, "sketch_apply: spec.n must match A.rows");
  DenseMatrix product;
  switch (spec.kind) {
    case SketchKind::Identity:
      product = a.to_dense();
      break;
    case SketchKind::Gaussian:
      product = apply_gaussian(spec, a);
      break;
    case SketchKind::CountSketch:
      product = apply_count_blocks(spec, a, 1, 1.0);
      break;
    case SketchKind::Sjlt:
      product = apply_count_blocks(spec, a, spec.s,
                                   1.0 / std::sqrt(static_cast<double>(spec.s)));
      break;
    case SketchKind::Srht:
      product = apply_srht(spec, a);
      break;
  }
  return SketchedMatrix{std::move(product), spec};
}

DenseMatrix realize_dense(const SketchSpec& spec) {
  spec.validate();
  require(spec.m * spec.n <= 1'000'000,
          "realize_dense: m*n exceeds the materialization guard");
  DenseMatrix s = DenseMatrix::Zero(spec.m, spec.n);
  switch (spec.kind) {
    case SketchKind::Identity:
      s.setIdentity();
      break;
    case SketchKind::Gaussian: {
      SeededRng rng(spec.seed);
      const double scale = 1.0 / std::sqrt(static_cast<double>(spec.m));
      // Row-major, the same order the chunked application path consumes.
      for (Index r = 0; r < spec.m; ++r)
        for (Index j = 0; j < spec.n; ++j) s(r, j) = scale * rng.normal();
      break;
    }
    case SketchKind::CountSketch:
    case SketchKind::Sjlt: {
      SeededRng rng(spec.seed);
      const int blocks = spec.kind == SketchKind::Sjlt ? spec.s : 1;
      const double entry =
          spec.kind == SketchKind::Sjlt
              ? 1.0 / std::sqrt(static_cast<double>(spec.s))
              : 1.0;
      const Index rows_per_block = spec.m / blocks;
      for (int b = 0; b < blocks; ++b) {
        const Index base = b * rows_per_block;
        for (Index j = 0; j < spec.n; ++j) {
          const Index h = static_cast<Index>(
              rng.uniform_index(static_cast<std::uint64_t>(rows_per_block)));
          s(base + h, j) = rng.sign() * entry;
        }
      }
      break;
    }
    case SketchKind::Srht: {
      const SrhtDraws draws = draw_srht(spec);
      const Index npad = hadamard_pad(spec.n);
      const double scale =
          std::sqrt(static_cast<double>(npad) / static_cast<double>(spec.m)) /
          std::sqrt(static_cast<double>(npad));
      for (Index r = 0; r < spec.m; ++r)
        for (Index j = 0; j < spec.n; ++j)
          s(r, j) = scale * hadamard_entry(draws.sample_rows[r], j) *
                    draws.signs[j];
      break;
    }
  }
  return s;
}

}  // namespace ridgepath
