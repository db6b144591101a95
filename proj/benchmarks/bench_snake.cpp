#include <benchmark/benchmark.h>

#include <random>

#include "vfk/kymo.hpp"
#include "vfk/snake.hpp"

namespace {

using namespace vfk::snake;

vfk::image::ScalarField random_field(int w, int h, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  std::uniform_real_distribution<double> u(0.0, 65025.0);
  std::vector<double> v(std::size_t(w) * std::size_t(h));
  for (auto& x : v) x = u(g);
  return vfk::image::ScalarField(w, h, std::move(v));
}

void BM_WindowStepOpen(benchmark::State& state) {
  const int n = int(state.range(0));
  const auto f = random_field(n + 4, 32, 1);
  const Snake s = horizontal_snake(n, 16);
  SnakeParams p;
  p.alpha = 1, p.beta = 1;
  for (auto _ : state) benchmark::DoNotOptimize(dp_deform_step(s, f, p, {}, 1));
  state.SetComplexityN(n);
}
BENCHMARK(BM_WindowStepOpen)->RangeMultiplier(4)->Range(16, 1024)->Complexity(benchmark::oN);

void BM_WindowStepClosed(benchmark::State& state) {
  const int n = int(state.range(0));
  const auto f = random_field(n + 4, 32, 2);
  Snake s = horizontal_snake(n, 16);
  s.closed = true;
  SnakeParams p;
  p.alpha = 1, p.beta = 1;
  for (auto _ : state) benchmark::DoNotOptimize(dp_deform_step(s, f, p, {}, 1));
}
BENCHMARK(BM_WindowStepClosed)->Arg(16)->Arg(64);

void BM_ColumnLockedBand(benchmark::State& state) {
  const int band = int(state.range(0));
  const auto f = random_field(176, 64, 3);
  const Snake s = horizontal_snake(176, 32);
  const HardConstraints hc = vfk::kymo::column_band_constraints(176, 32 - band, 32);
  for (auto _ : state) benchmark::DoNotOptimize(dp_deform_step(s, f, vfk::kymo::default_temporal_params(), hc));
  state.SetComplexityN(band);
}
BENCHMARK(BM_ColumnLockedBand)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

}  // namespace
