#include "rmlab/goodness_of_fit.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "rmlab/error.hpp"

namespace rmlab::dist {

KsResult ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf) {
  if (samples.size() < 100) throw PreconditionError("ks_statistic: needs at least 100 samples");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    const double above = static_cast<double>(i + 1) / n - f;
    const double below = f - static_cast<double>(i) / n;
    d = std::max({d, above, below});
  }
  return {d, 1.628 / std::sqrt(n)};
}

}  // namespace rmlab::dist
