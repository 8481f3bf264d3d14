#pragma once

#include <functional>
#include <span>

namespace rmlab::dist {

struct KsResult {
  double statistic = 0.0;
  /// Asymptotic 1% critical value 1.628/√n.
  double critical_value_at_01 = 0.0;

  [[nodiscard]] bool passes() const noexcept { return statistic < critical_value_at_01; }
};

/// One-sample Kolmogorov–Smirnov distance sup_x |F_n(x) − F(x)|.
/// Needs at least 100 samples.
[[nodiscard]] KsResult ks_statistic(std::span<const double> samples,
                                    const std::function<double(double)>& cdf);

}  // namespace rmlab::dist
