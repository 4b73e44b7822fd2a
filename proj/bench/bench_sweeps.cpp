// Serial reference against the OpenMP kernels on the exhaustive sweeps.

#include <benchmark/benchmark.h>

#include "treedup/diagonal.hpp"
#include "treedup/suites.hpp"

namespace {

using treedup::Exec;

Exec exec_of(const benchmark::State& state) { return state.range(0) == 0 ? Exec::serial : Exec::parallel; }

void label(benchmark::State& state) { state.SetLabel(state.range(0) == 0 ? "serial" : "parallel"); }

void BM_Gdelta(benchmark::State& state) {
  const auto frag = treedup::generate_fragment(static_cast<std::size_t>(state.range(1)), 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(treedup::verify_gdelta(frag, 6, exec_of(state)));
  }
  label(state);
}
BENCHMARK(BM_Gdelta)->ArgsProduct({{0, 1}, {2, 3}})->Unit(benchmark::kMillisecond);

void BM_Star(benchmark::State& state) {
  const auto frag = treedup::generate_fragment(static_cast<std::size_t>(state.range(1)), 4);
  const auto seq = treedup::extend_to_compactification(treedup::star_from_gdelta(frag, 6), frag);
  for (auto _ : state) {
    benchmark::DoNotOptimize(treedup::verify_star(seq, exec_of(state)));
  }
  label(state);
}
BENCHMARK(BM_Star)->ArgsProduct({{0, 1}, {2, 3}})->Unit(benchmark::kMillisecond);

void BM_Suite(benchmark::State& state, const char* suite) {
  treedup::SuiteConfig cfg;
  cfg.depth = static_cast<std::size_t>(state.range(1));
  cfg.exec = exec_of(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(treedup::run_suite(suite, cfg));
  }
  label(state);
}
BENCHMARK_CAPTURE(BM_Suite, hausdorff, "hausdorff")->ArgsProduct({{0, 1}, {3}})->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Suite, basis, "basis")->ArgsProduct({{0, 1}, {2, 3}})->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Suite, tau, "tau")->ArgsProduct({{0, 1}, {3, 4}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
