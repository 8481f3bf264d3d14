#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rmlab/random.hpp"

namespace rmlab::dist {

enum class Kind {
  Gaussian,
  Rademacher,
  Laplace,
  CenteredExponential,
  Exponential,
  GaussianProduct,
  TruncatedGaussianProduct,
  Zero,
};

/// An entry law. `param` is the scale (Laplace), rate (both exponentials)
/// or truncation threshold (TruncatedGaussianProduct); unused otherwise.
///
/// TruncatedGaussianProduct(s) is the law of g·g′·1{|g′| > s} for
/// independent standard Gaussians g, g′. Zero is the point mass at 0.
struct ScalarDistribution {
  Kind kind = Kind::Gaussian;
  double param = 1.0;

  [[nodiscard]] static ScalarDistribution gaussian() { return {Kind::Gaussian, 1.0}; }
  [[nodiscard]] static ScalarDistribution rademacher() { return {Kind::Rademacher, 1.0}; }
  [[nodiscard]] static ScalarDistribution laplace(double scale) { return {Kind::Laplace, scale}; }
  [[nodiscard]] static ScalarDistribution centered_exponential(double rate) {
    return {Kind::CenteredExponential, rate};
  }
  [[nodiscard]] static ScalarDistribution exponential(double rate) {
    return {Kind::Exponential, rate};
  }
  [[nodiscard]] static ScalarDistribution gaussian_product() {
    return {Kind::GaussianProduct, 1.0};
  }
  [[nodiscard]] static ScalarDistribution truncated_gaussian_product(double threshold) {
    return {Kind::TruncatedGaussianProduct, threshold};
  }
  [[nodiscard]] static ScalarDistribution zero() { return {Kind::Zero, 1.0}; }

  [[nodiscard]] bool has_parameter() const noexcept;
  [[nodiscard]] bool is_mean_zero() const noexcept { return kind != Kind::Exponential; }
  /// P{ξ > t} = P{ξ < −t} for all t.
  [[nodiscard]] bool is_symmetric() const noexcept;
  /// Finite ψ₂ norm.
  [[nodiscard]] bool is_subgaussian() const noexcept;

  friend bool operator==(const ScalarDistribution&, const ScalarDistribution&) = default;
};

/// Throws ParameterError when the parameter is not a positive finite real.
void validate(const ScalarDistribution& d);

/// Text form: identifier with optional `{key=value,...}`, e.g.
/// `laplace{scale=1.0}`, `gaussian`, `truncated_gaussian_product{threshold=2}`.
[[nodiscard]] ScalarDistribution parse(std::string_view text);
[[nodiscard]] std::string to_string(const ScalarDistribution& d);
[[nodiscard]] std::string_view kind_name(Kind k) noexcept;

/// One draw.
[[nodiscard]] double draw(const ScalarDistribution& d, Rng& rng);
/// Fill `out` with i.i.d. draws; `d` must already be validated.
void sample_into(const ScalarDistribution& d, Rng& rng, std::span<double> out);
/// `count` i.i.d. draws from a fresh generator on `stream`.
[[nodiscard]] std::vector<double> sample(const ScalarDistribution& d, SeedStream stream,
                                         std::size_t count);

/// Tolerance of the Orlicz-norm bisection.
inline constexpr double kPsiTolerance = 1e-9;

/// ‖ξ‖_{ψ₁} (order 1) or ‖ξ‖_{ψ₂} (order 2). Closed form where one exists,
/// otherwise bisection of E exp(|ξ|/K) = 2 against a quadrature of the
/// density. ψ₂ of a non-subgaussian law throws DomainError.
[[nodiscard]] double psi_norm(const ScalarDistribution& d, int order);

/// E exp(|ξ|/K), or +inf where it diverges. Exposed for tests.
[[nodiscard]] double psi1_mgf(const ScalarDistribution& d, double K);

enum class MomentMethod { ClosedForm, Quadrature, MonteCarlo };

struct MomentValue {
  double order = 1.0;
  double value = 0.0;
  MomentMethod method = MomentMethod::ClosedForm;
  double std_error = 0.0;
};

[[nodiscard]] std::string_view method_name(MomentMethod m) noexcept;

/// (E|ξ|^p)^{1/p} for p ≥ 1.
[[nodiscard]] MomentValue abs_moment(const ScalarDistribution& d, double p);

/// P{|ξ| ≥ t}.
[[nodiscard]] double abs_survival(const ScalarDistribution& d, double t);
/// Generalized inverse of t ↦ P{|ξ| ≤ t} at u ∈ [0, 1). Laws without a
/// closed-form inverse are solved by bisection (slow; see TabulatedQuantile).
[[nodiscard]] double abs_quantile(const ScalarDistribution& d, double u);

/// Empirical ψ₁: bisection on K ∈ [1e-6, 1e6] of mean exp(|x_i|/K) = 2.
/// Needs at least 1000 samples; an all-zero sample returns 0. Throws
/// NoSolutionError when the empirical MGF exceeds 2 across the bracket.
[[nodiscard]] double empirical_psi1(std::span<const double> samples);

/// Quantile function of |ξ| tabulated from empirical order statistics,
/// for laws whose inverse CDF has no closed form.
class TabulatedQuantile {
 public:
  /// Builds the table from `count` draws of |ξ| on `stream`.
  TabulatedQuantile(const ScalarDistribution& d, SeedStream stream, std::size_t count);

  /// Table built once per law with a fixed seed and 10^7 draws.
  [[nodiscard]] static const TabulatedQuantile& shared(const ScalarDistribution& d);

  [[nodiscard]] double operator()(double u) const;
  [[nodiscard]] std::size_t size() const noexcept { return sorted_.size(); }

 private:
  std::vector<double> sorted_;
};

}  // namespace rmlab::dist
