#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "oracles/naive.hpp"
#include "rmlab/compensated.hpp"
#include "rmlab/distributions.hpp"
#include "rmlab/error.hpp"
#include "rmlab/goodness_of_fit.hpp"
#include "rmlab/order_statistics.hpp"
#include "rmlab/random.hpp"

using namespace rmlab;
using dist::ScalarDistribution;

namespace {

double mean(const std::vector<double>& v) { return compensated_sum(v) / static_cast<double>(v.size()); }

double variance(const std::vector<double>& v) {
  const double m = mean(v);
  CompensatedSum s;
  for (double x : v) s.add((x - m) * (x - m));
  return s.value() / static_cast<double>(v.size() - 1);
}

}  // namespace

TEST(SeedStream, SameStreamSameSequence) {
  Rng a(SeedStream{42, 3});
  Rng b(SeedStream{42, 3});
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.bits(), b.bits());
}

TEST(SeedStream, DistinctIndicesDiffer) {
  Rng a(SeedStream{42, 3});
  Rng b(SeedStream{42, 4});
  int same = 0;
  for (int i = 0; i < 100; ++i) same += a.bits() == b.bits();
  EXPECT_EQ(same, 0);
}

TEST(SeedStream, ChildIsDeterministicAndTagSensitive) {
  const SeedStream s{7, 0};
  EXPECT_EQ(s.child(5), s.child(5));
  EXPECT_NE(s.child(5), s.child(6));
  EXPECT_EQ(s.child(5).master_seed, 7u);
}

TEST(SeedStream, IndependentStreamsAreUncorrelated) {
  const auto x = dist::sample(ScalarDistribution::gaussian(), SeedStream{1, 0}, 100000);
  const auto y = dist::sample(ScalarDistribution::gaussian(), SeedStream{1, 1}, 100000);
  CompensatedSum s;
  for (std::size_t i = 0; i < x.size(); ++i) s.add(x[i] * y[i]);
  EXPECT_LT(std::fabs(s.value() / 1e5), 4.0 / std::sqrt(1e5));
}

TEST(Rng, UniformRanges) {
  Rng r(SeedStream{9, 9});
  for (int i = 0; i < 100000; ++i) {
    const double u = r.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    const double v = r.uniform_open_low();
    ASSERT_GT(v, 0.0);
    ASSERT_LE(v, 1.0);
  }
}

TEST(Sample, RademacherSupport) {
  for (double x : dist::sample(ScalarDistribution::rademacher(), SeedStream{3, 1}, 4)) {
    EXPECT_TRUE(x == 1.0 || x == -1.0);
  }
}

TEST(Sample, GaussianMean) {
  const auto x = dist::sample(ScalarDistribution::gaussian(), SeedStream{11, 0}, 1000000);
  EXPECT_LT(std::fabs(mean(x)), 4e-3);
}

TEST(Sample, LaplaceVarianceMatchesQuadrature) {
  // Var = ∫ x² e^{-|x|}/2 dx, by Simpson on a long window.
  const double oracle = 2.0 * oracle::simpson([](double x) { return x * x * std::exp(-x) / 2.0; }, 0.0, 60.0);
  EXPECT_NEAR(oracle, 2.0, 1e-9);
  const auto x = dist::sample(ScalarDistribution::laplace(1.0), SeedStream{12, 0}, 1000000);
  EXPECT_NEAR(variance(x), oracle, 0.02 * oracle);
}

TEST(Sample, Deterministic) {
  const auto d = ScalarDistribution::gaussian_product();
  EXPECT_EQ(dist::sample(d, SeedStream{5, 5}, 1000), dist::sample(d, SeedStream{5, 5}, 1000));
}

TEST(Sample, RejectsBadParameters) {
  EXPECT_THROW((void)dist::sample(ScalarDistribution::laplace(0.0), SeedStream{}, 10), ParameterError);
  EXPECT_THROW((void)dist::sample(ScalarDistribution::laplace(-1.0), SeedStream{}, 10), ParameterError);
  EXPECT_THROW((void)dist::sample(ScalarDistribution::exponential(std::nan("")), SeedStream{}, 10),
               ParameterError);
  EXPECT_THROW((void)dist::sample(ScalarDistribution::truncated_gaussian_product(0.0), SeedStream{}, 10),
               ParameterError);
  EXPECT_THROW((void)dist::sample(ScalarDistribution::gaussian(), SeedStream{}, 0), PreconditionError);
}

TEST(Sample, MeanZeroKinds) {
  for (const auto& d : {ScalarDistribution::laplace(1.0), ScalarDistribution::centered_exponential(2.0),
                        ScalarDistribution::gaussian_product(), ScalarDistribution::truncated_gaussian_product(1.0)}) {
    const auto x = dist::sample(d, SeedStream{21, 0}, 400000);
    const double se = std::sqrt(variance(x) / 4e5);
    EXPECT_LT(std::fabs(mean(x)), 4.0 * se) << dist::to_string(d);
    EXPECT_TRUE(d.is_mean_zero());
  }
  EXPECT_FALSE(ScalarDistribution::exponential(1.0).is_mean_zero());
}

TEST(Sample, SymmetricKindsHaveSymmetricTails) {
  for (const auto& d : {ScalarDistribution::laplace(1.0), ScalarDistribution::gaussian_product(),
                        ScalarDistribution::rademacher()}) {
    ASSERT_TRUE(d.is_symmetric());
    const auto x = dist::sample(d, SeedStream{22, 0}, 200000);
    const double up = static_cast<double>(std::count_if(x.begin(), x.end(), [](double v) { return v > 0.5; }));
    const double down = static_cast<double>(std::count_if(x.begin(), x.end(), [](double v) { return v < -0.5; }));
    EXPECT_LT(std::fabs(up - down), 4.0 * std::sqrt(up + down)) << dist::to_string(d);
  }
  EXPECT_FALSE(ScalarDistribution::centered_exponential(1.0).is_symmetric());
}

TEST(Descriptor, RoundTrip) {
  for (const char* text : {"gaussian", "rademacher", "laplace{scale=1.5}", "centered_exponential{rate=2}",
                           "exponential{rate=0.5}", "gaussian_product", "truncated_gaussian_product{threshold=2}",
                           "zero"}) {
    const auto d = dist::parse(text);
    EXPECT_EQ(dist::parse(dist::to_string(d)), d) << text;
  }
  EXPECT_EQ(dist::parse(" laplace{ scale = 2 } "), ScalarDistribution::laplace(2.0));
  EXPECT_EQ(dist::parse("laplace"), ScalarDistribution::laplace(1.0));
}

TEST(Descriptor, Errors) {
  EXPECT_THROW((void)dist::parse("cauchy"), ParameterError);
  EXPECT_THROW((void)dist::parse("laplace{rate=1}"), ParameterError);
  EXPECT_THROW((void)dist::parse("laplace{scale=abc}"), ParameterError);
  EXPECT_THROW((void)dist::parse("laplace{scale=1"), ParameterError);
  EXPECT_THROW((void)dist::parse("laplace{scale=-1}"), ParameterError);
  EXPECT_THROW((void)dist::parse("gaussian{scale=1}"), ParameterError);
}

TEST(PsiNorm, ClosedForms) {
  EXPECT_DOUBLE_EQ(dist::psi_norm(ScalarDistribution::laplace(1.0), 1), 2.0);
  EXPECT_NEAR(dist::psi_norm(ScalarDistribution::rademacher(), 1), 1.0 / std::log(2.0), 1e-15);
  EXPECT_NEAR(dist::psi_norm(ScalarDistribution::gaussian(), 2), std::sqrt(8.0 / 3.0), 1e-15);
  EXPECT_NEAR(dist::psi_norm(ScalarDistribution::gaussian(), 2), 1.632993, 1e-6);
  EXPECT_NEAR(dist::psi_norm(ScalarDistribution::rademacher(), 2), 1.0 / std::sqrt(std::log(2.0)), 1e-15);
  EXPECT_DOUBLE_EQ(dist::psi_norm(ScalarDistribution::exponential(2.0), 1), 1.0);
}

TEST(PsiNorm, ScalesWithLaplaceScale) {
  for (double b : {0.25, 1.0, 3.0, 10.0}) {
    EXPECT_NEAR(dist::psi_norm(ScalarDistribution::laplace(b), 1), b * dist::psi_norm(ScalarDistribution::laplace(1.0), 1),
                1e-12 * b);
  }
}

TEST(PsiNorm, BisectionSolvesMgfEquation) {
  for (const auto& d : {ScalarDistribution::gaussian(), ScalarDistribution::gaussian_product(),
                        ScalarDistribution::centered_exponential(1.0), ScalarDistribution::truncated_gaussian_product(1.0)}) {
    const double K = dist::psi_norm(d, 1);
    EXPECT_NEAR(dist::psi1_mgf(d, K), 2.0, 1e-6) << dist::to_string(d);
    EXPECT_GT(dist::psi1_mgf(d, K * 0.999), 2.0);
  }
  // Gaussian ψ₁ from 2e^{1/(2K²)}Φ(1/K) = 2; reference value from an independent solve.
  EXPECT_NEAR(dist::psi_norm(ScalarDistribution::gaussian(), 1), 1.372494992, 1e-8);
}

TEST(PsiNorm, Psi2OfHeavyLawIsDomainError) {
  EXPECT_THROW((void)dist::psi_norm(ScalarDistribution::laplace(1.0), 2), DomainError);
  EXPECT_THROW((void)dist::psi_norm(ScalarDistribution::gaussian_product(), 2), DomainError);
  EXPECT_THROW((void)dist::psi_norm(ScalarDistribution::gaussian(), 3), ParameterError);
}

TEST(AbsMoment, Examples) {
  EXPECT_NEAR(dist::abs_moment(ScalarDistribution::gaussian_product(), 2).value, 1.0, 1e-14);
  EXPECT_NEAR(dist::abs_moment(ScalarDistribution::gaussian_product(), 1).value, 2.0 / std::numbers::pi, 1e-14);
  for (double p : {1.0, 2.5, 7.0}) {
    const auto m = dist::abs_moment(ScalarDistribution::rademacher(), p);
    EXPECT_EQ(m.value, 1.0);
    EXPECT_EQ(m.method, dist::MomentMethod::ClosedForm);
    EXPECT_EQ(m.std_error, 0.0);
  }
  EXPECT_NEAR(dist::abs_moment(ScalarDistribution::gaussian(), 2).value, 1.0, 1e-14);
  EXPECT_NEAR(dist::abs_moment(ScalarDistribution::laplace(1.0), 2).value, std::sqrt(2.0), 1e-14);
  EXPECT_THROW((void)dist::abs_moment(ScalarDistribution::gaussian(), 0.5), PreconditionError);
}

TEST(AbsMoment, CenteredExponentialByQuadratureMatchesSimpson) {
  for (double p : {1.0, 2.0, 3.0}) {
    const double ref = std::pow(oracle::simpson([p](double y) { return std::pow(std::fabs(y - 1.0), p) * std::exp(-y); },
                                                0.0, 80.0),
                                1.0 / p);
    const auto m = dist::abs_moment(ScalarDistribution::centered_exponential(1.0), p);
    EXPECT_NEAR(m.value, ref, 1e-9 * ref);
    EXPECT_EQ(m.method, dist::MomentMethod::Quadrature);
  }
  // Second moment of a centered Exp(1) is its variance, 1.
  EXPECT_NEAR(dist::abs_moment(ScalarDistribution::centered_exponential(1.0), 2.0).value, 1.0, 1e-10);
}

TEST(AbsMoment, TruncatedProductAgreesWithMonteCarlo) {
  const auto d = ScalarDistribution::truncated_gaussian_product(1.5);
  const auto x = dist::sample(d, SeedStream{31, 0}, 1000000);
  CompensatedSum s;
  for (double v : x) s.add(v * v);
  EXPECT_NEAR(std::sqrt(s.value() / 1e6), dist::abs_moment(d, 2).value, 0.01);
}

TEST(AbsMoment, MonotoneInP) {
  for (const auto& d : {ScalarDistribution::gaussian(), ScalarDistribution::laplace(2.0),
                        ScalarDistribution::centered_exponential(1.0), ScalarDistribution::gaussian_product(),
                        ScalarDistribution::truncated_gaussian_product(1.0)}) {
    double prev = 0.0;
    for (double p : {1.0, 2.0, 4.0, 8.0}) {
      const double v = dist::abs_moment(d, p).value;
      EXPECT_GE(v, prev) << dist::to_string(d) << " p=" << p;
      prev = v;
    }
  }
}

TEST(AbsMoment, LinearGrowthForSubexponentialKinds) {
  for (const auto& d : {ScalarDistribution::laplace(1.0), ScalarDistribution::exponential(1.0),
                        ScalarDistribution::centered_exponential(1.0), ScalarDistribution::gaussian_product()}) {
    double lo = 1e300;
    double hi = 0.0;
    for (double p = 2.0; p <= 32.0; p += 1.0) {
      const double r = dist::abs_moment(d, p).value / p;
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    EXPECT_GT(lo, 0.1) << dist::to_string(d);
    EXPECT_LT(hi, 2.0) << dist::to_string(d);
  }
}

TEST(Survival, QuantileInvertsSurvival) {
  for (const auto& d : {ScalarDistribution::gaussian(), ScalarDistribution::laplace(2.0),
                        ScalarDistribution::gaussian_product(), ScalarDistribution::centered_exponential(1.0)}) {
    for (double u : {0.1, 0.5, 0.9, 0.999}) {
      const double t = dist::abs_quantile(d, u);
      EXPECT_NEAR(1.0 - dist::abs_survival(d, t), u, 1e-9) << dist::to_string(d);
    }
  }
}

TEST(EmpiricalPsi1, Examples) {
  EXPECT_EQ(dist::empirical_psi1(std::vector<double>(1000, 0.0)), 0.0);
  const auto lap = dist::sample(ScalarDistribution::laplace(1.0), SeedStream{41, 0}, 1000000);
  EXPECT_NEAR(dist::empirical_psi1(lap), 2.0, 0.1);
  const auto rad = dist::sample(ScalarDistribution::rademacher(), SeedStream{41, 1}, 1000000);
  EXPECT_NEAR(dist::empirical_psi1(rad), 1.0 / std::log(2.0), 0.02 / std::log(2.0));
  EXPECT_THROW((void)dist::empirical_psi1(std::vector<double>(999, 1.0)), PreconditionError);
  EXPECT_THROW((void)dist::empirical_psi1(std::vector<double>(1000, 1e9)), NoSolutionError);
}

TEST(TabulatedQuantile, MatchesBisectionQuantile) {
  const auto d = ScalarDistribution::gaussian_product();
  const dist::TabulatedQuantile q(d, SeedStream{51, 0}, 1000000);
  EXPECT_EQ(q.size(), 1000000u);
  for (double u : {0.1, 0.5, 0.9}) EXPECT_NEAR(q(u), dist::abs_quantile(d, u), 0.01);
  EXPECT_THROW((void)q(1.0), PreconditionError);
}

TEST(Renyi, Examples) {
  EXPECT_EQ(dist::renyi_transform(std::vector<double>{1.0, 3.0}), (std::vector<double>{4.0, 4.0}));
  EXPECT_EQ(dist::renyi_transform(std::vector<double>{5.0}), (std::vector<double>{10.0}));
  EXPECT_THROW((void)dist::renyi_transform(std::vector<double>{3.0, 1.0}), PreconditionError);
  EXPECT_THROW((void)dist::renyi_transform(std::vector<double>{0.0, 1.0}), PreconditionError);
}

TEST(Renyi, SpacingsRebuildOrderStatistics) {
  Rng rng(SeedStream{61, 0});
  std::vector<double> x(20);
  for (double& e : x) e = rng.exponential();
  std::sort(x.begin(), x.end());
  const auto t = dist::renyi_transform(x);
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    acc += t[i] / (2.0 * static_cast<double>(x.size() - i));
    EXPECT_NEAR(acc, x[i], 1e-12 * x.back());
  }
}

TEST(Harmonic, Examples) {
  EXPECT_EQ(dist::harmonic_expectation(1), 1.0);
  EXPECT_NEAR(dist::harmonic_expectation(4), 25.0 / 12.0, 1e-15);
  EXPECT_NEAR(dist::harmonic_expectation(100), oracle::harmonic(100), 1e-14);
  EXPECT_NEAR(dist::harmonic_expectation(100), 5.187378, 1e-6);
  EXPECT_THROW((void)dist::harmonic_expectation(0), PreconditionError);
}

TEST(Harmonic, MaxOfExponentialsWithinThreeStandardErrors) {
  Rng rng(SeedStream{62, 0});
  std::vector<double> peaks(100000);
  for (double& p : peaks) {
    p = 0.0;
    for (int i = 0; i < 10; ++i) p = std::max(p, rng.exponential());
  }
  const double se = std::sqrt(variance(peaks) / 1e5);
  EXPECT_LT(std::fabs(mean(peaks) - dist::harmonic_expectation(10)), 3.0 * se);
}

TEST(Ks, BestCasePlacement) {
  const int n = 1000;
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = -2.0 * std::log1p(-(i + 0.5) / n);
  const auto r = dist::ks_statistic(x, [](double t) { return -std::expm1(-t / 2.0); });
  EXPECT_LE(r.statistic, 0.5 / n + 1e-12);
  EXPECT_NEAR(r.critical_value_at_01, 1.628 / std::sqrt(1000.0), 1e-15);
}

TEST(Ks, SelfTestAndMismatch) {
  const auto cdf_half = [](double t) { return t <= 0 ? 0.0 : -std::expm1(-t / 2.0); };
  auto x = dist::sample(ScalarDistribution::exponential(0.5), SeedStream{71, 0}, 100000);
  EXPECT_TRUE(dist::ks_statistic(x, cdf_half).passes());
  auto y = dist::sample(ScalarDistribution::exponential(1.0), SeedStream{71, 1}, 100000);
  EXPECT_FALSE(dist::ks_statistic(y, cdf_half).passes());
  EXPECT_THROW((void)dist::ks_statistic(std::vector<double>(99, 1.0), cdf_half), PreconditionError);
}
