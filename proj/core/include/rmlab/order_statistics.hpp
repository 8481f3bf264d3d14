#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rmlab::dist {

/// Spacings transform of sorted positive values η₍₁₎ ≤ … ≤ η₍ₙ₎:
/// T_i = 2(n − i + 1)(η₍ᵢ₎ − η₍ᵢ₋₁₎), η₍₀₎ = 0. For i.i.d. Exp(1) input the
/// T_i are i.i.d. chi-square with 2 degrees of freedom.
[[nodiscard]] std::vector<double> renyi_transform(std::span<const double> sorted_sample);

/// H_n = Σ_{i≤n} 1/i, which is E max of n i.i.d. Exp(1) draws.
[[nodiscard]] double harmonic_expectation(std::size_t n);

}  // namespace rmlab::dist
