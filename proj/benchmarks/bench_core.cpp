#include <benchmark/benchmark.h>

#include "rmlab/distributions.hpp"
#include "rmlab/harness.hpp"
#include "rmlab/linalg.hpp"
#include "rmlab/shaper.hpp"

namespace {

using namespace rmlab;

Matrix laplace_matrix(std::size_t r, std::size_t c, std::uint64_t seed) {
  return Matrix(r, c, dist::sample(dist::ScalarDistribution::laplace(1.0), SeedStream{seed, 0}, r * c));
}

void BM_SpectralNormPower(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix M = laplace_matrix(n, n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(linalg::spectral_norm(M, linalg::NormMethod::Power).value);
}
BENCHMARK(BM_SpectralNormPower)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_SpectralNormExact(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix M = laplace_matrix(n, n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(linalg::spectral_norm(M, linalg::NormMethod::Exact).value);
}
BENCHMARK(BM_SpectralNormExact)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_Matmul(benchmark::State& state) {
  const auto N = static_cast<std::size_t>(state.range(0));
  const Matrix B = harness::build_shaper({harness::ShaperKind::PartialIsometry, 32, N, 1, std::nullopt},
                                         SeedStream{3, 0});
  const Matrix A = laplace_matrix(N, 32, 4);
  for (auto _ : state) benchmark::DoNotOptimize(linalg::matmul(B, A).data().data());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(32 * N * 32));
}
BENCHMARK(BM_Matmul)->Arg(32)->Arg(512)->Arg(2048);

void BM_SampleLaplace(benchmark::State& state) {
  const auto law = dist::ScalarDistribution::laplace(1.0);
  std::vector<double> out(1 << 16);
  Rng rng(SeedStream{5, 0});
  for (auto _ : state) {
    dist::sample_into(law, rng, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(out.size()));
}
BENCHMARK(BM_SampleLaplace);

void BM_SmallColumnsTrial(benchmark::State& state) {
  const std::size_t k = harness::small_columns_k(8, 1.0);
  const Matrix B = harness::build_shaper({harness::ShaperKind::ReplicatedAverage, 8, 8 * k, k, std::nullopt},
                                         SeedStream{6, 0});
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(harness::sample_norms(B, 8, dist::ScalarDistribution::laplace(1.0), 1,
                                                   SeedStream{6, ++seed}, linalg::NormMethod::Power, 1)
                                 .norms[0]);
  }
}
BENCHMARK(BM_SmallColumnsTrial)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
