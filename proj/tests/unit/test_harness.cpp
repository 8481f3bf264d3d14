#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rmlab/distributions.hpp"
#include "rmlab/error.hpp"
#include "rmlab/harness.hpp"
#include "rmlab/linalg.hpp"
#include "rmlab/shaper.hpp"

using namespace rmlab;
using namespace rmlab::harness;
using dist::ScalarDistribution;

namespace {

const Verdict* find_verdict(const ScenarioReport& r, const std::string& item) {
  for (const auto& v : r.verdicts) {
    if (v.item == item) return &v;
  }
  return nullptr;
}

}  // namespace

TEST(Shaper, IdentityEmbed) {
  const Matrix B = build_shaper({ShaperKind::IdentityEmbed, 3, 5, 1, std::nullopt}, SeedStream{1, 0});
  EXPECT_EQ(linalg::spectral_norm(B, linalg::NormMethod::Exact).value, 1.0);
  EXPECT_EQ(linalg::column_norms(B), (std::vector<double>{1, 1, 1, 0, 0}));
  EXPECT_THROW((void)build_shaper({ShaperKind::IdentityEmbed, 5, 3, 1, std::nullopt}, SeedStream{1, 0}),
               ShapeError);
}

TEST(Shaper, ReplicatedAverage) {
  const Matrix B = build_shaper({ShaperKind::ReplicatedAverage, 2, 8, 4, std::nullopt}, SeedStream{1, 0});
  ASSERT_EQ(B.rows(), 2u);
  ASSERT_EQ(B.cols(), 8u);
  for (double c : linalg::column_norms(B)) EXPECT_DOUBLE_EQ(c, 0.5);
  const Matrix G = linalg::matmul(B, B.transposed());
  EXPECT_LE(linalg::max_abs_difference(G, Matrix::identity(2)), 1e-15);
  EXPECT_THROW((void)build_shaper({ShaperKind::ReplicatedAverage, 2, 9, 4, std::nullopt}, SeedStream{1, 0}),
               ShapeError);
}

TEST(Shaper, PartialIsometry) {
  const Matrix B = build_shaper({ShaperKind::PartialIsometry, 8, 64, 1, std::nullopt}, SeedStream{2, 0});
  EXPECT_LE(linalg::max_abs_difference(linalg::matmul(B, B.transposed()), Matrix::identity(8)), 1e-10);
  const Matrix again = build_shaper({ShaperKind::PartialIsometry, 8, 64, 1, std::nullopt}, SeedStream{2, 0});
  EXPECT_EQ(linalg::max_abs_difference(B, again), 0.0);
}

TEST(Shaper, ExplicitCertification) {
  const Matrix ok = Matrix::from_rows({{0.6, 0.0}, {0.0, 0.8}});
  EXPECT_NO_THROW((void)build_shaper({ShaperKind::Explicit, 2, 2, 1, ok}, SeedStream{1, 0}));
  const Matrix big = Matrix::from_rows({{1.0, 1.0}});
  EXPECT_THROW((void)build_shaper({ShaperKind::Explicit, 1, 2, 1, big}, SeedStream{1, 0}), ConstructionError);
  EXPECT_THROW((void)build_shaper({ShaperKind::Explicit, 1, 2, 1, std::nullopt}, SeedStream{1, 0}), ShapeError);
  EXPECT_EQ(parse_shaper_kind("replicated_average"), ShaperKind::ReplicatedAverage);
  EXPECT_THROW((void)parse_shaper_kind("circulant"), ParameterError);
}

TEST(Shaper, TraceIdentity) {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const Matrix B = build_shaper({ShaperKind::PartialIsometry, 6, 20, 1, std::nullopt}, SeedStream{s, 0});
    EXPECT_LE(linalg::gram_trace(B), 6.0 + 1e-9);
  }
}

TEST(PowerMean, MonotoneInP) {
  const auto xs = dist::sample(ScalarDistribution::laplace(1.0), SeedStream{3, 0}, 5000);
  double prev = 0.0;
  for (double p : {1.0, 1.5, 2.0, 4.0, 8.0, 16.0}) {
    const double v = power_mean(xs, p);
    EXPECT_GE(v, prev);
    prev = v;
  }
  const std::vector<double> small{1.0, 3.0};
  EXPECT_DOUBLE_EQ(power_mean(small, 1.0), 2.0);
  EXPECT_DOUBLE_EQ(power_mean(small, 2.0), std::sqrt(5.0));
  EXPECT_THROW((void)power_mean(small, 0.5), ParameterError);
  EXPECT_THROW((void)power_mean_estimate(small, 1.0), InsufficientDataError);
}

TEST(PowerMean, BatchStandardErrorScale) {
  const auto xs = dist::sample(ScalarDistribution::gaussian(), SeedStream{4, 0}, 20000);
  const auto e = power_mean_estimate(xs, 2.0);
  EXPECT_NEAR(e.value, 1.0, 0.03);
  // Var(g²) = 2, so the se of the mean square is about 0.01 and of its root about 0.005.
  EXPECT_GT(e.std_error, 0.002);
  EXPECT_LT(e.std_error, 0.01);
}

TEST(SampleNorms, WorkerCountDoesNotChangeResults) {
  const Matrix B = build_shaper({ShaperKind::PartialIsometry, 6, 24, 1, std::nullopt}, SeedStream{5, 0});
  const auto law = ScalarDistribution::laplace(1.0);
  const auto one = sample_norms(B, 6, law, 300, SeedStream{5, 1}, linalg::NormMethod::Power, 1);
  const auto three = sample_norms(B, 6, law, 300, SeedStream{5, 1}, linalg::NormMethod::Power, 3);
  EXPECT_EQ(one.norms, three.norms);
  EXPECT_EQ(one.convergence_warnings, three.convergence_warnings);
}

TEST(SampleNorms, IdentityEmbedSquareReducesToA) {
  const std::size_t n = 5;
  const Matrix B = build_shaper({ShaperKind::IdentityEmbed, n, n, 1, std::nullopt}, SeedStream{6, 0});
  const auto law = ScalarDistribution::gaussian();
  const auto s = sample_norms(B, n, law, 200, SeedStream{6, 1}, linalg::NormMethod::Exact, 1);
  for (std::size_t t = 0; t < 200; ++t) {
    Rng rng(SeedStream{6, 1}.child(t));
    Matrix A(n, n);
    dist::sample_into(law, rng, A.data());
    EXPECT_EQ(s.norms[t], linalg::spectral_norm(A, linalg::NormMethod::Exact).value);
  }
  const double mean = std::accumulate(s.norms.begin(), s.norms.end(), 0.0) / 200.0;
  EXPECT_NEAR(power_mean(s.norms, 1.0), mean, 1e-12 * mean);
}

TEST(SampleNorms, PowerMatchesExactOracle) {
  const Matrix B = build_shaper({ShaperKind::PartialIsometry, 16, 64, 1, std::nullopt}, SeedStream{7, 0});
  const auto law = ScalarDistribution::gaussian();
  const auto p = sample_norms(B, 16, law, 500, SeedStream{7, 1}, linalg::NormMethod::Power, 1);
  const auto e = sample_norms(B, 16, law, 500, SeedStream{7, 1}, linalg::NormMethod::Exact, 1);
  const double mp = power_mean(p.norms, 1.0);
  const double me = power_mean(e.norms, 1.0);
  EXPECT_LT(std::fabs(mp - me) / me, 0.15);
  EXPECT_LT(std::fabs(mp - me) / me, 1e-6);
}

TEST(Moments, ZeroLawGivesZero) {
  ExperimentConfig c = default_config("moments");
  c.dist = ScalarDistribution::zero();
  c.n = 4;
  c.shaper = {ShaperKind::PartialIsometry, 4, 8, 1, std::nullopt};
  c.trials = 100;
  for (const auto& m : estimate_norm_moments(c)) EXPECT_EQ(m.value, 0.0);
}

TEST(Config, ValidateRejects) {
  ExperimentConfig c = default_config("moments");
  EXPECT_NO_THROW(c.validate());
  c.trials = 49;
  EXPECT_THROW(c.validate(), ConfigError);
  c = default_config("moments");
  c.p_grid = {0.5};
  EXPECT_THROW(c.validate(), ConfigError);
  c.p_grid = {};
  EXPECT_THROW(c.validate(), ConfigError);
  c = default_config("scaling");
  c.N_grid = {32, 0};
  EXPECT_THROW(c.validate(), ConfigError);
  EXPECT_THROW((void)default_config("everything"), ConfigError);
  EXPECT_EQ(scenario_names().size(), 6u);
}

TEST(Moments, ScenarioVerdictsOnSmallInstance) {
  ExperimentConfig c = default_config("moments");
  c.n = 6;
  c.shaper = {ShaperKind::PartialIsometry, 6, 12, 1, std::nullopt};
  c.trials = 1000;
  const auto r = run_moment_growth(c);
  EXPECT_FALSE(r.failed());
  ASSERT_EQ(r.moments.size(), 4u);
  for (std::size_t i = 1; i < r.moments.size(); ++i) EXPECT_GE(r.moments[i].estimate, r.moments[i - 1].estimate);
  c.trials = 999;
  EXPECT_THROW((void)run_moment_growth(c), ConfigError);
}

TEST(Tails, ZeroLawIsInconclusive) {
  ExperimentConfig c = default_config("tails");
  c.dist = ScalarDistribution::zero();
  c.n = 2;
  c.shaper = {ShaperKind::PartialIsometry, 2, 4, 1, std::nullopt};
  c.trials = 10000;
  const auto r = run_tail_decay(c);
  EXPECT_FALSE(r.failed());
  ASSERT_NE(find_verdict(r, "tail fit"), nullptr);
  EXPECT_EQ(find_verdict(r, "tail fit")->status, Status::Inconclusive);
}

TEST(Tails, GaussianDecaysFasterThanLaplace) {
  ExperimentConfig c = default_config("tails");
  c.n = 4;
  c.shaper = {ShaperKind::PartialIsometry, 4, 8, 1, std::nullopt};
  c.trials = 20000;
  const auto lap = run_tail_decay(c);
  // Match the scale: Laplace(1/√2) has unit variance like the Gaussian.
  c.dist = ScalarDistribution::laplace(1.0 / std::sqrt(2.0));
  const auto lap_unit = run_tail_decay(c);
  c.dist = ScalarDistribution::gaussian();
  const auto gau = run_tail_decay(c);
  EXPECT_FALSE(lap.failed());
  EXPECT_LT(gau.metrics.at("slope"), lap_unit.metrics.at("slope"));
}

TEST(Scaling, GaussianControlIsFlat) {
  ExperimentConfig c = default_config("scaling");
  c.dist = ScalarDistribution::gaussian();
  c.n = 8;
  c.shaper.m = 8;
  c.N_grid = {8, 32, 128};
  c.trials = 200;
  const auto r = run_scaling_in_N(c);
  EXPECT_FALSE(r.failed());
  EXPECT_EQ(r.moments.size(), 3u);
}

TEST(Scaling, SingleRowEdgeCase) {
  ExperimentConfig c = default_config("scaling");
  c.dist = ScalarDistribution::gaussian();
  c.n = 1;
  c.shaper.m = 1;
  c.N_grid = {1, 4, 16, 64};
  c.trials = 400;
  const auto r = run_scaling_in_N(c);
  EXPECT_FALSE(r.failed());
}

TEST(SmallColumns, ReplicationFactor) {
  EXPECT_EQ(small_columns_k(1, 1.0), 1u);
  const double ln8 = std::log(8.0);
  EXPECT_EQ(small_columns_k(8, 1.0), static_cast<std::size_t>(std::ceil(64.0 * std::pow(ln8, 5))));
  EXPECT_THROW((void)small_columns_k(64, 1.0), ConfigError);
}

TEST(AlmostSquare, SquareEdgeAndRangeGuard) {
  ExperimentConfig c = default_config("almost-square");
  c.n = 6;
  c.shaper = {ShaperKind::PartialIsometry, 6, 6, 1, std::nullopt};
  c.trials = 400;
  EXPECT_FALSE(run_regime_almost_square(c).failed());
  c.shaper.N = 300;
  EXPECT_THROW((void)run_regime_almost_square(c), ConfigError);
}
