#include <benchmark/benchmark.h>

#include "vfk/kymo.hpp"

namespace {

using namespace vfk::kymo;

void BM_GenerateAndDecide(benchmark::State& state) {
  VSpec s = preset(Preset::habitual);
  s.periods = int(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(decide_vncfl(generate_vstring(s), s));
}
BENCHMARK(BM_GenerateAndDecide)->Range(8, 4096);

void BM_Render(benchmark::State& state) {
  VSpec s = preset(Preset::habitual);
  s.periods = int(state.range(0));
  s.noise = 20;
  const VString v = generate_vstring(s);
  for (auto _ : state) benchmark::DoNotOptimize(render_kymogram(v, s));
}
BENCHMARK(BM_Render)->Arg(8)->Arg(64);

void BM_TemporalTransform(benchmark::State& state) {
  const VSpec s = preset(Preset::habitual);
  const Kymogram k = render_kymogram(generate_vstring(s), s);
  for (auto _ : state) {
    benchmark::DoNotOptimize(temporal_snake_transform(k.image, default_temporal_params(), k.midline, 16));
  }
}
BENCHMARK(BM_TemporalTransform);

}  // namespace

BENCHMARK_MAIN();
