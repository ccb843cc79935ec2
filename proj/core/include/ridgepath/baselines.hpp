#pragma once

#include <optional>

#include "ridgepath/matrix.hpp"
#include "ridgepath/path_solver.hpp"
#include "ridgepath/sketch.hpp"
#include "ridgepath/spectrum.hpp"

namespace ridgepath {

/// One SVD of A, then a diagonal solve per lambda:
/// x(lambda) = V (S^2 + lambda I)^{-1} S U^T b. Exactness oracle for the
/// other solvers.
RegPathResult svd_path(const Matrix& a, const Vector& b,
                       const PathConfig& config, const Matrix* a_test = nullptr,
                       const Vector* b_test = nullptr);

/// Forms A^T A once, then factors (A^T A + lambda I) per lambda.
RegPathResult direct_path(const Matrix& a, const Vector& b,
                          const PathConfig& config,
                          const Matrix* a_test = nullptr,
                          const Vector* b_test = nullptr);

/// Conjugate gradient on the normal equations via gram_apply, swept from the
/// largest lambda down with warm starts. Stops at relative residual
/// <= epsilon; iteration cap 10*d per lambda.
RegPathResult warm_cg_path(const Matrix& a, const Vector& b,
                           const PathConfig& config,
                           const Matrix* a_test = nullptr,
                           const Vector* b_test = nullptr);

/// Warm-started sketched Newton iterations per lambda, sharing one SVD of
/// SA across the sweep through reshifts. Speed baseline for large grids.
RegPathResult warm_ihs_path(const Matrix& a, const Vector& b,
                            const PathConfig& config, const SketchSpec& spec,
                            const RhoBounds& rho,
                            const Matrix* a_test = nullptr,
                            const Vector* b_test = nullptr);

}  // namespace ridgepath
