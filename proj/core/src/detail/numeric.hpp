#pragma once

#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/erf.hpp>

namespace rmlab::detail {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kSqrt2 = 1.414213562373095048801688724209698079;

inline double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * kPi); }
inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / kSqrt2); }

/// Adaptive Gauss–Kronrod on [a, b]; b may be +inf.
template <class F>
double integrate(F f, double a, double b, double rel_tol = 1e-12) {
  double error = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, rel_tol,
                                                                        &error);
}

/// Bisection for a decreasing predicate boundary: returns the smallest x in
/// [lo, hi] (to absolute width `tol`) with too_small(x) false.
template <class Pred>
double bisect_boundary(Pred too_small, double lo, double hi, double tol) {
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (too_small(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace rmlab::detail
