#include <benchmark/benchmark.h>

#include <cmath>
#include <filesystem>
#include <random>

#include "dyneval/aggregation.hpp"
#include "dyneval/config.hpp"
#include "dyneval/dataset.hpp"
#include "dyneval/evaluate.hpp"
#include "dyneval/scales.hpp"
#include "dyneval/synthetic.hpp"
#include "dyneval/timeseries.hpp"

using namespace dyneval;

namespace {

std::vector<double> random_signal(std::size_t n, double hi, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

void BM_NormL2(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto v = random_signal(n, 1.0, 1);
  for (auto _ : state) benchmark::DoNotOptimize(norm_l2(v, 0.001));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_NormL2)->Range(256, 1 << 16);

void BM_NormWithDerivatives(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const DeviationSignal dev(SamplingGrid(0.001, n), random_signal(n, 1.0, 2));
  for (auto _ : state) benchmark::DoNotOptimize(norm_with_derivatives(dev, 3, Metric::MeanSquared));
}
BENCHMARK(BM_NormWithDerivatives)->Range(256, 1 << 16);

void BM_HybridEvaluate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const DeviationSignal dev(SamplingGrid(0.001, n), random_signal(n, 0.9, 3));
  const ScaleConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(hybrid_evaluate(dev, 1.0, cfg));
}
BENCHMARK(BM_HybridEvaluate)->Range(256, 1 << 16);

void BM_Aggregate(benchmark::State& state) {
  const TensorShape shape{6, 18, 3, 4};
  LocalEvalTensor tensor(shape);
  const auto values = random_signal(shape.cell_count() * 2, 3.0, 4);
  std::size_t i = 0;
  for (std::size_t n = 0; n < shape.elements; ++n)
    for (std::size_t l = 0; l < shape.modes; ++l)
      for (std::size_t m = 0; m < shape.characteristics; ++m)
        for (std::size_t k = 0; k < shape.criteria; ++k, i += 2) {
          tensor.set(n, l, m, k, {2.0 + values[i], 2.0 + values[i + 1], 3, ""});
        }
  const auto weights = WeightProfile::equal(shape);
  for (auto _ : state) benchmark::DoNotOptimize(aggregate(tensor, weights).global);
}
BENCHMARK(BM_Aggregate);

void BM_EvaluateDemo(benchmark::State& state) {
  const auto dir = std::filesystem::temp_directory_path() / "dyneval_bench_demo";
  const auto result =
      generate_synthetic(read_synthetic_spec(std::filesystem::path(DYNEVAL_DATA_DIR) / "demo_spec.json"), dir);
  const Dataset dataset = load_dataset(result.manifest);
  const RunConfig config = read_config(result.config);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(dataset, config).evaluation.global);
  std::filesystem::remove_all(dir);
}
BENCHMARK(BM_EvaluateDemo)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
