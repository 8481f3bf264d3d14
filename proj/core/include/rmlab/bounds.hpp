#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace rmlab::bounds {

/// The anonymous universal constants of the concentration inequalities,
/// made explicit.
struct BoundConstants {
  double c_bernstein = 1.0;
  /// Gaussian concentration exponent, must lie in (0, 1).
  double c0_gauss = 0.5;
  /// Moment-to-tail multiplier; e makes the Markov argument at p = u exact.
  double C_moment_tail = 2.718281828459045;
  double c_subexp = 1.0;

  /// Throws ParameterError when a constant is non-positive or c0_gauss ≥ 1.
  void validate() const;
};

struct BernsteinResult {
  double probability = 1.0;
  /// Set when a = 0 and t > 0: the sum is identically zero.
  bool degenerate = false;
};

/// exp(−c·min(t²/(K²‖a‖₂²), t/(K‖a‖_∞))).
[[nodiscard]] BernsteinResult bernstein_bound(std::span<const double> a, double K, double t,
                                              const BoundConstants& consts = {});

/// exp(−c₀t²/lip²).
[[nodiscard]] double gaussian_lipschitz_bound(double t, double lip,
                                              const BoundConstants& consts = {});

/// 4·exp(−t²/4). Not capped at 1.
[[nodiscard]] double talagrand_bound(double t);

/// C·(a₁u + a₂√u + a₃) for u ≥ 1.
[[nodiscard]] double moment_to_tail_threshold(double a1, double a2, double a3, double u,
                                              const BoundConstants& consts = {});

/// 2·exp(−t/K₁).
[[nodiscard]] double subexp_tail_bound(double K1, double t);

/// Empirical survival of |x| at increasing thresholds with Wilson 95% bands.
struct TailCurve {
  std::vector<double> thresholds;
  std::vector<double> survival;
  std::vector<double> ci_low;
  std::vector<double> ci_high;
  std::size_t sample_count = 0;
};

struct WilsonInterval {
  double low = 0.0;
  double high = 1.0;
};

/// Wilson score interval at z (default 1.96, 95%).
[[nodiscard]] WilsonInterval wilson_interval(std::size_t successes, std::size_t trials,
                                             double z = 1.959963984540054);

/// Needs at least 1000 samples; thresholds must be increasing.
[[nodiscard]] TailCurve empirical_tail(std::span<const double> samples,
                                       std::span<const double> thresholds);

/// Counts of |x| ≥ t per threshold; partial tallies merge by addition in
/// any order.
struct TailTally {
  std::vector<double> thresholds;
  std::vector<std::size_t> exceed;
  std::size_t total = 0;

  explicit TailTally(std::vector<double> ts);
  void add(double x);
  void merge(const TailTally& other);
  [[nodiscard]] TailCurve curve() const;
};

struct TailFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t points_used = 0;
};

/// Least-squares line through (t, ln S(t)) over the points with
/// fit_floor < S(t) < 0.5. InsufficientDataError below 4 such points.
[[nodiscard]] TailFit fit_tail_rate(const TailCurve& curve, double fit_floor);

/// Binomial standard error √(s(1 − s)/n).
[[nodiscard]] double proportion_std_error(double s, std::size_t n);

/// CSV with header `threshold,survival,ci_low,ci_high,n`.
void write_csv(std::ostream& os, const TailCurve& curve);

/// Largest c making exp(−c·rate(t)) ≥ S(t) at every grid point with
/// S(t) > 0, i.e. min over t of −ln S(t)/rate(t). Used to report the
/// constant a bound needs on data instead of assuming one.
[[nodiscard]] double fit_exponent_constant(std::span<const double> survival,
                                           std::span<const double> rate);

}  // namespace rmlab::bounds
