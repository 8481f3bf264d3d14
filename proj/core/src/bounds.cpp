#include "rmlab/bounds.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "rmlab/compensated.hpp"
#include "rmlab/error.hpp"

namespace rmlab::bounds {

void BoundConstants::validate() const {
  if (!(c_bernstein > 0.0) || !(C_moment_tail > 0.0) || !(c_subexp > 0.0)) {
    throw ParameterError("bound constants must be positive");
  }
  if (!(c0_gauss > 0.0 && c0_gauss < 1.0)) throw ParameterError("c0_gauss must lie in (0, 1)");
}

BernsteinResult bernstein_bound(std::span<const double> a, double K, double t,
                                const BoundConstants& consts) {
  if (!(K > 0.0)) throw ParameterError("bernstein_bound: K must be positive");
  if (t < 0.0) throw ParameterError("bernstein_bound: t must be non-negative");
  if (t == 0.0) return {1.0, false};
  CompensatedSum sq;
  double sup = 0.0;
  for (double x : a) {
    sq.add(x * x);
    sup = std::max(sup, std::fabs(x));
  }
  if (sup == 0.0) return {0.0, true};
  const double quadratic = t * t / (K * K * sq.value());
  const double linear = t / (K * sup);
  return {std::exp(-consts.c_bernstein * std::min(quadratic, linear)), false};
}

double gaussian_lipschitz_bound(double t, double lip, const BoundConstants& consts) {
  if (!(lip > 0.0)) throw ParameterError("gaussian_lipschitz_bound: lip must be positive");
  return std::exp(-consts.c0_gauss * t * t / (lip * lip));
}

double talagrand_bound(double t) { return 4.0 * std::exp(-t * t / 4.0); }

double moment_to_tail_threshold(double a1, double a2, double a3, double u,
                                const BoundConstants& consts) {
  if (!(u >= 1.0)) throw PreconditionError("moment_to_tail_threshold: u must be >= 1");
  if (a1 < 0.0 || a2 < 0.0 || a3 < 0.0) throw ParameterError("moment_to_tail_threshold: a_i must be >= 0");
  return consts.C_moment_tail * (a1 * u + a2 * std::sqrt(u) + a3);
}

double subexp_tail_bound(double K1, double t) {
  if (!(K1 > 0.0)) throw ParameterError("subexp_tail_bound: K1 must be positive");
  return 2.0 * std::exp(-t / K1);
}

WilsonInterval wilson_interval(std::size_t successes, std::size_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  // Clamp so the interval always contains the point estimate despite rounding.
  return {std::clamp(std::min(centre - half, p), 0.0, 1.0), std::clamp(std::max(centre + half, p), 0.0, 1.0)};
}

TailTally::TailTally(std::vector<double> ts) : thresholds(std::move(ts)), exceed(thresholds.size(), 0) {
  for (std::size_t i = 1; i < thresholds.size(); ++i) {
    if (!(thresholds[i] > thresholds[i - 1])) throw PreconditionError("thresholds must be increasing");
  }
}

void TailTally::add(double x) {
  const double ax = std::fabs(x);
  // Number of thresholds t with t ≤ |x|.
  const auto hit = std::upper_bound(thresholds.begin(), thresholds.end(), ax) - thresholds.begin();
  for (std::ptrdiff_t i = 0; i < hit; ++i) ++exceed[static_cast<std::size_t>(i)];
  ++total;
}

void TailTally::merge(const TailTally& other) {
  if (other.thresholds != thresholds) throw ShapeError("TailTally::merge: threshold grids differ");
  for (std::size_t i = 0; i < exceed.size(); ++i) exceed[i] += other.exceed[i];
  total += other.total;
}

TailCurve TailTally::curve() const {
  TailCurve c;
  c.thresholds = thresholds;
  c.sample_count = total;
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    const double s = total == 0 ? 0.0 : static_cast<double>(exceed[i]) / static_cast<double>(total);
    const auto w = wilson_interval(exceed[i], total);
    c.survival.push_back(s);
    c.ci_low.push_back(w.low);
    c.ci_high.push_back(w.high);
  }
  return c;
}

TailCurve empirical_tail(std::span<const double> samples, std::span<const double> thresholds) {
  if (samples.size() < 1000) throw PreconditionError("empirical_tail: needs at least 1000 samples");
  TailTally tally(std::vector<double>(thresholds.begin(), thresholds.end()));
  for (double x : samples) tally.add(x);
  return tally.curve();
}

TailFit fit_tail_rate(const TailCurve& curve, double fit_floor) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = 0; i < curve.thresholds.size(); ++i) {
    const double s = curve.survival[i];
    if (s > fit_floor && s < 0.5) {
      xs.push_back(curve.thresholds[i]);
      ys.push_back(std::log(s));
    }
  }
  if (xs.size() < 4) {
    throw InsufficientDataError("fit_tail_rate: " + std::to_string(xs.size()) +
                                " usable points, need at least 4");
  }
  const double n = static_cast<double>(xs.size());
  const double mx = compensated_sum(xs) / n;
  const double my = compensated_sum(ys) / n;
  CompensatedSum sxx;
  CompensatedSum sxy;
  CompensatedSum syy;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxx.add(dx * dx);
    sxy.add(dx * dy);
    syy.add(dy * dy);
  }
  TailFit fit;
  fit.points_used = xs.size();
  fit.slope = sxy.value() / sxx.value();
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy.value() == 0.0 ? 1.0
                                     : std::clamp(sxy.value() * sxy.value() / (sxx.value() * syy.value()), 0.0, 1.0);
  return fit;
}

double proportion_std_error(double s, std::size_t n) {
  if (n == 0) return 0.0;
  return std::sqrt(std::max(s * (1.0 - s), 0.0) / static_cast<double>(n));
}

void write_csv(std::ostream& os, const TailCurve& curve) {
  os << "threshold,survival,ci_low,ci_high,n\n";
  char buf[64];
  const auto put = [&](double x) {
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    os.write(buf, end - buf);
  };
  for (std::size_t i = 0; i < curve.thresholds.size(); ++i) {
    put(curve.thresholds[i]);
    os << ',';
    put(curve.survival[i]);
    os << ',';
    put(curve.ci_low[i]);
    os << ',';
    put(curve.ci_high[i]);
    os << ',' << curve.sample_count << '\n';
  }
}

double fit_exponent_constant(std::span<const double> survival, std::span<const double> rate) {
  double c = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < survival.size() && i < rate.size(); ++i) {
    if (survival[i] > 0.0 && rate[i] > 0.0) c = std::min(c, -std::log(survival[i]) / rate[i]);
  }
  return c;
}

}  // namespace rmlab::bounds
