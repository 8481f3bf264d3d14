#pragma once

#include <cstddef>
#include <vector>

#include "rmlab/matrix.hpp"
#include "rmlab/random.hpp"

namespace rmlab::decomp {

/// Columns of B with ‖B_i‖₂ > threshold ("large") versus the rest, and the
/// matching row partition of A. Ties go to the small side.
struct ColumnSplit {
  double threshold = 0.0;
  std::vector<std::size_t> large_indices;
  std::vector<std::size_t> small_indices;
  Matrix B_large;
  Matrix B_small;
  Matrix A_large;
  Matrix A_small;

  [[nodiscard]] std::size_t N0() const noexcept { return large_indices.size(); }
};

/// C·n⁻¹·max(ln n, 1)^{−5/2}.
[[nodiscard]] double split_threshold(std::size_t n, double C_split = 1.0);

/// ShapeError unless B.cols() == A.rows().
[[nodiscard]] ColumnSplit split_columns(const Matrix& B, const Matrix& A, double threshold);

/// ‖B_large·A_large + B_small·A_small − B·A‖_max.
[[nodiscard]] double reconstruct_check(const ColumnSplit& split, const Matrix& B, const Matrix& A);

/// C·√n·max(ln n, 1).
[[nodiscard]] double truncation_level(std::size_t n, double C_trunc = 1.0);

struct TruncationSplit {
  double level = 0.0;
  Matrix bounded;  ///< a·1(|a| ≤ level)
  Matrix tail;     ///< a·1(|a| > level)
};

[[nodiscard]] TruncationSplit truncate_entries(const Matrix& A, double level);

/// Entrywise product with fresh Rademacher signs from `stream`.
[[nodiscard]] Matrix symmetrize(const Matrix& A, SeedStream stream);

struct PaddedPair {
  Matrix B;
  Matrix A;
};

/// Appends zero columns to A or zero rows to B so that B.rows() == A.cols().
[[nodiscard]] PaddedPair pad_to_square(const Matrix& B, const Matrix& A);

/// Ξ = sqrt(Σ_i max_j G(i,j)² ‖B_i‖₂²) where G is N×n and B has N columns.
[[nodiscard]] double xi_statistic(const Matrix& B, const Matrix& G_tail);

/// 2n²∫_lower^∞ x²e^{−x²/2}dx by quadrature; `lower` is the truncation
/// level a for the literal envelope or √a for the Gaussian-tail one.
[[nodiscard]] double xi_squared_envelope(std::size_t n, double lower);

}  // namespace rmlab::decomp
