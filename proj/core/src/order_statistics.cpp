#include "rmlab/order_statistics.hpp"

#include "rmlab/compensated.hpp"
#include "rmlab/error.hpp"

namespace rmlab::dist {

std::vector<double> renyi_transform(std::span<const double> sorted_sample) {
  const std::size_t n = sorted_sample.size();
  std::vector<double> t(n);
  double previous = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = sorted_sample[i];
    if (!(x > 0.0)) throw PreconditionError("renyi_transform: entries must be positive");
    if (x < previous) throw PreconditionError("renyi_transform: input must be sorted non-decreasing");
    t[i] = 2.0 * static_cast<double>(n - i) * (x - previous);
    previous = x;
  }
  return t;
}

double harmonic_expectation(std::size_t n) {
  if (n == 0) throw PreconditionError("harmonic_expectation: n must be at least 1");
  // Smallest terms first.
  CompensatedSum s;
  for (std::size_t i = n; i >= 1; --i) s.add(1.0 / static_cast<double>(i));
  return s.value();
}

}  // namespace rmlab::dist
