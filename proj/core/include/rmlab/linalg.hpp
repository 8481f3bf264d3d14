#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rmlab/matrix.hpp"

namespace rmlab::linalg {

/// B·A with compensated inner products. Throws ShapeError unless
/// B.cols() == A.rows().
[[nodiscard]] Matrix matmul(const Matrix& B, const Matrix& A);

enum class NormMethod { Power, Exact };

struct NormEstimate {
  double value = 0.0;
  /// False when the power iteration hit its cap; `value` is then the best
  /// estimate seen.
  bool converged = true;
  std::size_t iterations = 0;
};

struct PowerOptions {
  double relative_tolerance = 1e-12;
  std::size_t max_iterations = 100000;
  std::uint64_t restart_seed = 0x5eedf00dULL;
};

/// Largest singular value.
///
/// Power: iterate on the min(rows, cols)-sided Gram matrix from the
/// normalized all-ones vector and from one seeded random vector, stopping
/// when the Rayleigh quotient moves by at most the relative tolerance;
/// returns the larger of the two limits.
///
/// Exact: one-sided cyclic Jacobi SVD; needs min(rows, cols) ≤ 64.
[[nodiscard]] NormEstimate spectral_norm(const Matrix& M, NormMethod method = NormMethod::Power,
                                         const PowerOptions& options = {});

/// All singular values, descending, by one-sided Jacobi (min-dim ≤ 64).
[[nodiscard]] std::vector<double> singular_values(const Matrix& M);

[[nodiscard]] std::vector<double> column_norms(const Matrix& M);
/// Trace(MᵀM) = Σ entries².
[[nodiscard]] double gram_trace(const Matrix& M);

[[nodiscard]] Matrix scaled(const Matrix& M, double factor);
[[nodiscard]] Matrix added(const Matrix& X, const Matrix& Y);
/// max |X_ij − Y_ij|; ShapeError on mismatch.
[[nodiscard]] double max_abs_difference(const Matrix& X, const Matrix& Y);
/// ‖x‖₂ of a vector, compensated.
[[nodiscard]] double euclidean_norm(std::span<const double> x);

}  // namespace rmlab::linalg
