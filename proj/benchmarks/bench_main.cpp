#include <benchmark/benchmark.h>

#include "derham/analysis.hpp"
#include "derham/measure.hpp"
#include "derham/presets.hpp"
#include "derham/solution.hpp"
#include "derham/stationary.hpp"

using namespace derham;

namespace {

DeRhamSystem system_for(int exact) {
  return exact ? presets::lebesgue(Scalar::ratio(1, 3)) : presets::lebesgue(Scalar::ratio(1, 3)).to_mode(Mode::approx);
}

void BM_EvalDyadic(benchmark::State& state) {
  const DeRhamSystem sys = system_for(static_cast<int>(state.range(1)));
  const auto depth = static_cast<unsigned>(state.range(0));
  const DyadicAddress addr = DyadicAddress::from_index((std::uint64_t{1} << depth) / 3, depth);
  for (auto _ : state) benchmark::DoNotOptimize(eval_dyadic(sys, addr));
}
BENCHMARK(BM_EvalDyadic)->ArgsProduct({{8, 16, 32, 48}, {0, 1}})->ArgNames({"depth", "exact"});

void BM_EvalPoint(benchmark::State& state) {
  const DeRhamSystem sys = presets::walk(Scalar::approx(0.5));
  for (auto _ : state) benchmark::DoNotOptimize(eval(sys, Scalar::approx(0.3141592653589793), 1e-12));
}
BENCHMARK(BM_EvalPoint);

void BM_SamplePath(benchmark::State& state) {
  const DeRhamSystem sys = presets::walk(Scalar::approx(0.5));
  const auto n = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(entropy_rate_estimate(sys, n, seed++));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_SamplePath)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

void BM_SamplePathExact(benchmark::State& state) {
  const DeRhamSystem sys = presets::walk(1);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sample_path(sys, n, 7));
}
BENCHMARK(BM_SamplePathExact)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

void BM_MeasureTree(benchmark::State& state) {
  const DeRhamSystem sys = system_for(static_cast<int>(state.range(1)));
  const auto depth = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    Scalar total(0);
    visit_tree(sys, depth, [&](const MeasureNode& node) {
      if (node.addr.size() == depth) total += node.R;
    });
    benchmark::DoNotOptimize(total);
  }
}
BENCHMARK(BM_MeasureTree)->ArgsProduct({{8, 12}, {0, 1}})->ArgNames({"depth", "exact"})->Unit(benchmark::kMillisecond);

void BM_Classify(benchmark::State& state) {
  const DeRhamSystem sys = state.range(0) ? presets::walk(1) : presets::lebesgue(Scalar::ratio(1, 3));
  for (auto _ : state) benchmark::DoNotOptimize(classify(sys));
}
BENCHMARK(BM_Classify)->Arg(0)->Arg(1);

void BM_DimensionBounds(benchmark::State& state) {
  const DeRhamSystem sys = presets::walk(Scalar::approx(0.5));
  for (auto _ : state) benchmark::DoNotOptimize(dimension_bounds(sys));
}
BENCHMARK(BM_DimensionBounds);

void BM_Stationarity(benchmark::State& state) {
  const DeRhamSystem sys = presets::walk(1);
  for (auto _ : state) benchmark::DoNotOptimize(stationarity_check(sys, static_cast<unsigned>(state.range(0)), 1e-11));
}
BENCHMARK(BM_Stationarity)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
