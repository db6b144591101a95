#include <benchmark/benchmark.h>

#include <random>

#include "vfk/automata.hpp"
#include "vfk/bijections.hpp"

namespace {

void BM_DfaRun(benchmark::State& state) {
  const auto d = vfk::automata::build_substring_dfa(U"CoRR", U"CoRx");
  std::mt19937_64 g(7);
  std::u32string w(std::size_t(state.range(0)), U'C');
  for (auto& c : w) c = U"CoRx"[g() % 4];
  for (auto _ : state) benchmark::DoNotOptimize(vfk::automata::dfa_run(d, w));
  state.SetBytesProcessed(std::int64_t(state.iterations()) * state.range(0));
}
BENCHMARK(BM_DfaRun)->Range(64, 1 << 16);

void BM_BuildSubstringDfa(benchmark::State& state) {
  std::u32string pattern;
  for (int i = 0; i < state.range(0); ++i) pattern.push_back(U"ab"[i % 3 == 0]);
  for (auto _ : state) benchmark::DoNotOptimize(vfk::automata::build_substring_dfa(pattern, U"ab"));
}
BENCHMARK(BM_BuildSubstringDfa)->Range(4, 512);

void BM_PairRoundTrip(benchmark::State& state) {
  using vfk::bijections::Natural;
  const Natural a = Natural(1) << int(state.range(0));
  const Natural b = a / 3;
  for (auto _ : state) benchmark::DoNotOptimize(vfk::bijections::unpair(vfk::bijections::pair(a, b)));
}
BENCHMARK(BM_PairRoundTrip)->Arg(16)->Arg(64)->Arg(256)->Arg(1024);

}  // namespace
