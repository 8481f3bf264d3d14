#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "oracles/naive.hpp"
#include "rmlab/bounds.hpp"
#include "rmlab/distributions.hpp"
#include "rmlab/error.hpp"

using namespace rmlab;
using namespace rmlab::bounds;

namespace {

TailCurve exact_curve(const std::vector<double>& ts, double (*surv)(double)) {
  TailCurve c;
  c.thresholds = ts;
  c.sample_count = 1;
  for (double t : ts) {
    c.survival.push_back(surv(t));
    c.ci_low.push_back(surv(t));
    c.ci_high.push_back(surv(t));
  }
  return c;
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(a + (b - a) * i / (n - 1));
  return v;
}

}  // namespace

TEST(Constants, Validation) {
  EXPECT_NO_THROW(BoundConstants{}.validate());
  EXPECT_THROW((BoundConstants{0.0, 0.5, 1.0, 1.0}.validate()), ParameterError);
  EXPECT_THROW((BoundConstants{1.0, 1.0, 1.0, 1.0}.validate()), ParameterError);
  EXPECT_THROW((BoundConstants{1.0, 0.5, -1.0, 1.0}.validate()), ParameterError);
  EXPECT_NEAR(BoundConstants{}.C_moment_tail, std::exp(1.0), 1e-15);
}

TEST(Bernstein, Examples) {
  const BoundConstants c;
  EXPECT_NEAR(bernstein_bound(std::vector<double>{1, 0, 0}, 1.0, 2.0, c).probability, std::exp(-2.0), 1e-15);
  EXPECT_EQ(bernstein_bound(std::vector<double>{1, 0, 0}, 1.0, 0.0, c).probability, 1.0);
  EXPECT_NEAR(bernstein_bound(std::vector<double>{1, 1, 1, 1}, 1.0, 1.0, c).probability, 0.778801, 1e-6);
  const auto z = bernstein_bound(std::vector<double>{0, 0}, 1.0, 1.0, c);
  EXPECT_EQ(z.probability, 0.0);
  EXPECT_TRUE(z.degenerate);
  EXPECT_THROW((void)bernstein_bound(std::vector<double>{1}, 0.0, 1.0, c), ParameterError);
}

TEST(Bernstein, MonotoneInTAndConstant) {
  const std::vector<double> a{0.5, 1.0, -2.0};
  double prev = 1.0;
  for (double t = 0.0; t < 20.0; t += 0.1) {
    const double b = bernstein_bound(a, 1.5, t).probability;
    EXPECT_LE(b, prev);
    prev = b;
    EXPECT_LE(bernstein_bound(a, 1.5, t, {2.0, 0.5, 1.0, 1.0}).probability, b);
  }
}

TEST(GaussianLipschitz, Examples) {
  EXPECT_EQ(gaussian_lipschitz_bound(0.0, 1.0), 1.0);
  EXPECT_NEAR(gaussian_lipschitz_bound(3.0, 3.0), std::exp(-0.5), 1e-15);
  EXPECT_NEAR(gaussian_lipschitz_bound(2.0, 2.0), gaussian_lipschitz_bound(1.0, 1.0), 1e-16);
  EXPECT_LE(gaussian_lipschitz_bound(1.0, 1.0, {1.0, 0.9, 1.0, 1.0}), gaussian_lipschitz_bound(1.0, 1.0));
  EXPECT_THROW((void)gaussian_lipschitz_bound(1.0, 0.0), ParameterError);
}

TEST(Talagrand, Examples) {
  EXPECT_EQ(talagrand_bound(0.0), 4.0);
  EXPECT_NEAR(talagrand_bound(2.0), 1.471518, 1e-6);
  EXPECT_NEAR(talagrand_bound(4.0), 0.073263, 1e-6);
}

TEST(MomentToTail, Examples) {
  const BoundConstants unit{1.0, 0.5, 1.0, 1.0};
  EXPECT_EQ(moment_to_tail_threshold(1, 1, 1, 4, unit), 7.0);
  EXPECT_EQ(moment_to_tail_threshold(0, 0, 2.5, 9, unit), 2.5);
  EXPECT_THROW((void)moment_to_tail_threshold(1, 1, 1, 0.5), PreconditionError);
  EXPECT_THROW((void)moment_to_tail_threshold(-1, 1, 1, 2), ParameterError);
}

TEST(MomentToTail, LaplaceEmpiricalSurvival) {
  const auto xs = dist::sample(dist::ScalarDistribution::laplace(1.0), SeedStream{1, 0}, 1000000);
  const double t = moment_to_tail_threshold(2, 0, 0, 5);
  const double s = empirical_tail(xs, std::vector<double>{t}).survival[0];
  EXPECT_LE(s, std::exp(-5.0));
}

TEST(SubexpTail, Examples) {
  EXPECT_EQ(subexp_tail_bound(1.0, 0.0), 2.0);
  EXPECT_NEAR(subexp_tail_bound(2.0, 4.0 * std::log(2.0)), 0.5, 1e-15);
  EXPECT_THROW((void)subexp_tail_bound(0.0, 1.0), ParameterError);
}

TEST(SubexpTail, LaplaceEnvelopeHoldsOnGrid) {
  const auto xs = dist::sample(dist::ScalarDistribution::laplace(1.0), SeedStream{2, 0}, 1000000);
  const auto c = empirical_tail(xs, linspace(0.0, 15.0, 31));
  for (std::size_t i = 0; i < c.thresholds.size(); ++i) {
    const double se = proportion_std_error(c.survival[i], c.sample_count);
    EXPECT_LE(c.survival[i], subexp_tail_bound(2.0, c.thresholds[i]) + 3.0 * se);
  }
}

TEST(EmpiricalTail, Examples) {
  const std::vector<double> zeros(1000, 0.0);
  EXPECT_EQ(empirical_tail(zeros, std::vector<double>{1.0}).survival[0], 0.0);
  EXPECT_EQ(empirical_tail(zeros, std::vector<double>{0.0}).survival[0], 1.0);
  const auto xs = dist::sample(dist::ScalarDistribution::exponential(1.0), SeedStream{3, 0}, 1000000);
  const double s = empirical_tail(xs, std::vector<double>{1.0}).survival[0];
  EXPECT_LT(std::fabs(s - std::exp(-1.0)), 3.0 * proportion_std_error(std::exp(-1.0), 1000000));
  EXPECT_THROW((void)empirical_tail(std::vector<double>(999, 1.0), std::vector<double>{1.0}), PreconditionError);
  EXPECT_THROW((void)empirical_tail(zeros, std::vector<double>{1.0, 0.5}), PreconditionError);
}

TEST(EmpiricalTail, CurveInvariants) {
  const auto xs = dist::sample(dist::ScalarDistribution::gaussian(), SeedStream{4, 0}, 10000);
  const auto c = empirical_tail(xs, linspace(0.0, 4.0, 41));
  for (std::size_t i = 0; i < c.thresholds.size(); ++i) {
    if (i > 0) EXPECT_LE(c.survival[i], c.survival[i - 1]);
    EXPECT_LE(c.ci_low[i], c.survival[i]);
    EXPECT_GE(c.ci_high[i], c.survival[i]);
  }
}

TEST(TailTally, MergeIsOrderIndependent) {
  const auto xs = dist::sample(dist::ScalarDistribution::laplace(1.0), SeedStream{5, 0}, 5000);
  const auto ts = linspace(0.0, 5.0, 11);
  TailTally whole(ts);
  TailTally a(ts);
  TailTally b(ts);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    whole.add(xs[i]);
    (i % 3 == 0 ? a : b).add(xs[i]);
  }
  TailTally ab = a;
  ab.merge(b);
  TailTally ba = b;
  ba.merge(a);
  EXPECT_EQ(ab.exceed, whole.exceed);
  EXPECT_EQ(ba.exceed, whole.exceed);
  EXPECT_EQ(ab.total, whole.total);
  EXPECT_THROW(a.merge(TailTally(linspace(0.0, 1.0, 3))), ShapeError);
}

TEST(Wilson, Properties) {
  const auto w = wilson_interval(0, 100);
  EXPECT_EQ(w.low, 0.0);
  EXPECT_GT(w.high, 0.0);
  const auto h = wilson_interval(50, 100);
  EXPECT_NEAR(h.low + h.high, 1.0, 1e-12);
  EXPECT_NEAR(h.low, 0.4038, 1e-4);
}

TEST(FitTailRate, ExactExponential) {
  const auto c = exact_curve(linspace(0.5, 3.0, 20), [](double t) { return std::exp(-2.0 * t); });
  const auto f = fit_tail_rate(c, 1e-3);
  EXPECT_NEAR(f.slope, -2.0, 1e-12);
  EXPECT_NEAR(f.r_squared, 1.0, 1e-12);
}

TEST(FitTailRate, GaussianTailIsBetterFitByQuadratic) {
  const auto ts = linspace(1.0, 3.0, 30);
  const auto c = exact_curve(ts, [](double t) { return std::exp(-t * t); });
  const auto f = fit_tail_rate(c, 1e-6);
  std::vector<double> x;
  std::vector<double> y;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (c.survival[i] > 1e-6 && c.survival[i] < 0.5) {
      x.push_back(ts[i]);
      y.push_back(std::log(c.survival[i]));
    }
  }
  const auto line = oracle::ols_line(x, y);
  EXPECT_NEAR(f.slope, line.slope, 1e-9);
  double tss = 0.0;
  double my = 0.0;
  for (double v : y) my += v / static_cast<double>(y.size());
  for (double v : y) tss += (v - my) * (v - my);
  const double r2_quadratic = 1.0 - oracle::quadratic_rss(x, y) / tss;
  EXPECT_LT(f.r_squared, r2_quadratic);
  EXPECT_NEAR(f.r_squared, 1.0 - line.rss / tss, 1e-9);
}

TEST(FitTailRate, LaplaceSlope) {
  const auto xs = dist::sample(dist::ScalarDistribution::laplace(1.0), SeedStream{6, 0}, 100000);
  const auto f = fit_tail_rate(empirical_tail(xs, linspace(0.75, 6.5, 40)), 1e-3);
  EXPECT_NEAR(f.slope, -1.0, 0.1);
}

TEST(FitTailRate, TooFewPoints) {
  const auto c = exact_curve({1.0, 2.0, 3.0}, [](double t) { return std::exp(-t); });
  EXPECT_THROW((void)fit_tail_rate(c, 1e-3), InsufficientDataError);
}

TEST(FitExponentConstant, RecoversConstant) {
  std::vector<double> s;
  std::vector<double> r;
  for (double t = 0.5; t < 5; t += 0.5) {
    r.push_back(t * t);
    s.push_back(std::exp(-0.7 * t * t));
  }
  EXPECT_NEAR(fit_exponent_constant(s, r), 0.7, 1e-12);
}

TEST(TailCurve, CsvHeader) {
  const auto c = exact_curve({1.0, 2.0}, [](double t) { return std::exp(-t); });
  std::stringstream ss;
  write_csv(ss, c);
  std::string header;
  std::getline(ss, header);
  EXPECT_EQ(header, "threshold,survival,ci_low,ci_high,n");
}
