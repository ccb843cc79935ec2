#pragma once

#include <cstdint>
#include <string>

#include "ridgepath/matrix.hpp"

namespace ridgepath {

enum class SketchKind { Gaussian, CountSketch, Sjlt, Srht, Identity };

std::string to_string(SketchKind kind);
SketchKind sketch_kind_from_string(const std::string& name);

/// Description of a random sketching operator S in R^{m x n}. The seed fixes
/// the realized operator completely: identical specs produce identical bits.
struct SketchSpec {
  SketchKind kind = SketchKind::Identity;
  Index m = 0;       ///< sketch rows
  Index n = 0;       ///< input rows
  int s = 1;         ///< SJLT column sparsity (SJLT only; must divide m)
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument on a malformed spec.
  void validate() const;

  SketchSpec with_m(Index new_m) const;
  SketchSpec with_seed(std::uint64_t new_seed) const;
};

struct SketchedMatrix {
  DenseMatrix product;  ///< S * A, shape m x d
  SketchSpec spec;
};

/// Applies the realized sketch to A, i.e. computes S*A for the operator
/// drawn from spec.seed.
///
/// Costs per family: Gaussian O(m nnz(A)), CountSketch/SJLT O(s nnz(A)),
/// SRHT O(nd log m) through a pruned Walsh-Hadamard butterfly, Identity is a
/// densifying copy. Draw order is pinned per family (see realize_dense),
/// so the result is deterministic given the spec.
SketchedMatrix sketch_apply(const SketchSpec& spec, const Matrix& a);

/// Materializes S explicitly (test oracle; sketch_apply(spec, A) equals
/// realize_dense(spec) * A for every A). Guarded to n*m <= 1e6.
DenseMatrix realize_dense(const SketchSpec& spec);

/// Smallest power of two >= n; the SRHT padding width.
Index hadamard_pad(Index n);

}  // namespace ridgepath
