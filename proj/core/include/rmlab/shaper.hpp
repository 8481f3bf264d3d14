#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "rmlab/matrix.hpp"
#include "rmlab/random.hpp"

namespace rmlab::harness {

enum class ShaperKind {
  IdentityEmbed,     ///< B = [I_m | 0]
  PartialIsometry,   ///< orthonormalized Gaussian rows
  ReplicatedAverage, ///< B(i, i·k + j) = 1/√k, N = k·m
  Explicit,          ///< caller-supplied matrix
};

/// Deterministic m×N matrix B with ‖B‖ ≤ 1.
struct ShaperSpec {
  ShaperKind kind = ShaperKind::PartialIsometry;
  std::size_t m = 1;
  std::size_t N = 1;
  /// Replication factor for ReplicatedAverage; N must equal k·m.
  std::size_t k = 1;
  std::optional<Matrix> matrix;
};

inline constexpr double kShaperNormSlack = 1e-9;

[[nodiscard]] ShaperKind parse_shaper_kind(std::string_view name);
[[nodiscard]] std::string_view shaper_kind_name(ShaperKind k) noexcept;

/// Builds and certifies B. ShapeError on inconsistent dimensions,
/// ConstructionError when ‖B‖ > 1 + 1e-9.
[[nodiscard]] Matrix build_shaper(const ShaperSpec& spec, SeedStream stream);

/// Rows orthonormalized in place by modified Gram–Schmidt. ConstructionError
/// on a (numerically) dependent row.
void orthonormalize_rows(Matrix& M);

}  // namespace rmlab::harness
