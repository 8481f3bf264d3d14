#pragma once

#include <cmath>
#include <span>

namespace rmlab {

/// Kahan–Babuška–Neumaier running sum.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  CompensatedSum& operator+=(double x) noexcept {
    add(x);
    return *this;
  }

  /// A non-finite running sum is returned as is; the compensation term is
  /// NaN once an infinity has been added.
  [[nodiscard]] double value() const noexcept { return std::isfinite(sum_) ? sum_ + comp_ : sum_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

[[nodiscard]] inline double compensated_sum(std::span<const double> xs) noexcept {
  CompensatedSum s;
  for (double x : xs) s.add(x);
  return s.value();
}

/// Dot product with error-free transformations (Ogita–Rump–Oishi Dot2).
[[nodiscard]] inline double compensated_dot(std::span<const double> a,
                                            std::span<const double> b) noexcept {
  double s = 0.0;
  double c = 0.0;
  const std::size_t n = a.size() < b.size() ? a.size() : b.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double p = a[i] * b[i];
    const double pe = std::fma(a[i], b[i], -p);
    const double t = s + p;
    const double z = t - s;
    const double se = (s - (t - z)) + (p - z);
    s = t;
    c += pe + se;
  }
  return s + c;
}

}  // namespace rmlab
