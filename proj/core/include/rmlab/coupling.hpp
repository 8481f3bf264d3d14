#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "rmlab/distributions.hpp"
#include "rmlab/matrix.hpp"
#include "rmlab/random.hpp"

namespace rmlab::coupling {

using Survival = std::function<double(double)>;
using Quantile = std::function<double(double)>;

inline constexpr double kDominationSlack = 1e-12;
inline constexpr double kMaxDominationConstant = 1e6;
inline constexpr double kDominationTolerance = 1e-9;

/// Smallest grid-feasible c ≥ 1 with S_h(t) ≤ c·S_{h′}(t/c) on every grid
/// point (S = survival of the absolute value).
struct DominationFit {
  double c = 1.0;
  std::vector<double> grid;
  /// c·S_{h′}(t/c) − S_h(t) per grid point.
  std::vector<double> margins;
};

[[nodiscard]] bool dominates(const Survival& surv_h, const Survival& surv_hp,
                             std::span<const double> t_grid, double c);

/// Bisection over c ∈ [1, 1e6] down to a relative width of 1e-9; returns
/// the feasible end. NoSolutionError when c = 1e6 is infeasible.
[[nodiscard]] DominationFit fit_domination_constant(const Survival& surv_h,
                                                    const Survival& surv_hp,
                                                    std::span<const double> t_grid);

struct CoupledPair {
  double x = 0.0;  ///< δ|h| with δ ~ Bernoulli(1/c)
  double y = 0.0;  ///< c|h′|
};

/// Monotone coupling through one shared uniform per draw:
/// X = 0 when U < 1 − 1/c, else X = Q_h(c(U − 1 + 1/c)); Y = c·Q_{h′}(U).
/// Under the fitted domination, X ≤ Y for every pair.
[[nodiscard]] std::vector<CoupledPair> quantile_couple(const DominationFit& fit,
                                                       const Quantile& quantile_h,
                                                       const Quantile& quantile_hp,
                                                       SeedStream stream, std::size_t count);

enum class FunctionalKind { AbsSum, EuclideanNorm, SpectralNorm, SignedSum, MaxCoordinate };

/// A functional f of the n_vars coordinates. SpectralNorm reshapes the
/// coordinates into a B.cols() × (n_vars / B.cols()) matrix A and returns
/// ‖BA‖.
struct Functional {
  FunctionalKind kind = FunctionalKind::AbsSum;
  std::optional<Matrix> shaper;

  [[nodiscard]] bool is_symmetric_convex() const noexcept;
  [[nodiscard]] double operator()(std::span<const double> x) const;
};

/// Accepts `abs-sum`, `euclidean-norm`, `spectral-norm`, `signed-sum`, `max`.
[[nodiscard]] FunctionalKind parse_functional(std::string_view name);
[[nodiscard]] std::string_view functional_name(FunctionalKind k) noexcept;

struct ComparisonEstimate {
  double K = 1.0;
  double lhs = 0.0;  ///< Monte Carlo E f(h)
  double rhs = 0.0;  ///< Monte Carlo E f(K h′)
  double lhs_se = 0.0;
  double rhs_se = 0.0;

  [[nodiscard]] double combined_se() const noexcept;
  /// lhs ≤ rhs + 3 combined standard errors.
  [[nodiscard]] bool holds() const noexcept;
};

/// Throws ContractError for functionals that are not symmetric convex.
[[nodiscard]] ComparisonEstimate comparison_estimate(const Functional& f,
                                                     const dist::ScalarDistribution& h,
                                                     const dist::ScalarDistribution& hp, double K,
                                                     std::size_t n_vars, std::size_t trials,
                                                     SeedStream stream);

struct SmallestK {
  double K = 1.0;
  ComparisonEstimate at_K;
};

/// Doubling from K = 1/16 until the comparison holds, then bisection
/// between the last failing and first holding K (12 halvings). Uses the
/// same draws for every K; all admissible functionals are positively
/// homogeneous, so rhs(K) = K·rhs(1).
[[nodiscard]] SmallestK smallest_working_K(const Functional& f, const dist::ScalarDistribution& h,
                                           const dist::ScalarDistribution& hp, std::size_t n_vars,
                                           std::size_t trials, SeedStream stream);

/// Survival/quantile callables of |ξ| for a law; laws without a closed-form
/// inverse use the shared tabulated quantile.
[[nodiscard]] Survival abs_survival_of(const dist::ScalarDistribution& d);
[[nodiscard]] Quantile abs_quantile_of(const dist::ScalarDistribution& d);

}  // namespace rmlab::coupling
