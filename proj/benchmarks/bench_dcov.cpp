#include <benchmark/benchmark.h>

#include "dcov/dcov.hpp"

namespace {

dcov::PairedSample make_pair(std::size_t n, std::size_t d) {
  return dcov::generate({dcov::GeneratorKind::IndependentPair, n, d, d, {}, 42});
}

void BM_PairwiseDistances(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto p = make_pair(n, 10);
  for (auto _ : state) benchmark::DoNotOptimize(dcov::pairwise_distances(p.x(), dcov::Threads{1}));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PairwiseDistances)->RangeMultiplier(2)->Range(64, 1024)->Complexity(benchmark::oNSquared);

void BM_DoubleCenter(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto dm = dcov::pairwise_distances(make_pair(n, 10).x());
  for (auto _ : state) benchmark::DoNotOptimize(dcov::double_center(dm));
}
BENCHMARK(BM_DoubleCenter)->RangeMultiplier(2)->Range(64, 1024);

void BM_Dcor(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto p = make_pair(n, 10);
  const auto v = static_cast<dcov::Variant>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(dcov::dcor(p, v));
}
BENCHMARK(BM_Dcor)->ArgsProduct({{64, 256, 1024}, {0, 1}});

void BM_PermutationTest(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto p = make_pair(n, 3);
  const auto a = dcov::centered_distances(p.x());
  const auto b = dcov::centered_distances(p.y());
  dcov::PermTestConfig cfg;
  cfg.replicates = 199;
  cfg.seed = 1;
  cfg.threads = dcov::Threads{1};
  for (auto _ : state) benchmark::DoNotOptimize(dcov::permutation_test(a, b, cfg));
}
BENCHMARK(BM_PermutationTest)->Arg(30)->Arg(100)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_DcorMatrixTopEigen(benchmark::State& state) {
  const auto cols = static_cast<std::size_t>(state.range(0));
  const auto data = dcov::generate_sample({dcov::GeneratorKind::GaussianIID, 100, cols, 1, {}, 7}).data();
  for (auto _ : state) {
    const auto m = dcov::dcor_matrix(data, dcov::Variant::NoDiag, dcov::Threads{1});
    benchmark::DoNotOptimize(dcov::top_eigen(m, 3));
  }
}
BENCHMARK(BM_DcorMatrixTopEigen)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
