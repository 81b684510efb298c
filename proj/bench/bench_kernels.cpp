// Serial reference vs OpenMP kernels on generated messy instances.

#include "wsdp/generator.hpp"
#include "wsdp/kernels.hpp"

#include <benchmark/benchmark.h>

using namespace wsdp;

namespace {

WeakInstance instance_of_order(std::size_t n) {
  GenConfig c;
  c.n = n;
  c.m = n / 2 + 2;
  c.k = 2;
  c.l = 2;
  c.block_max = 3;
  c.seed = 42;
  c.messy = true;
  return generate(c);
}

template <class Fn>
void run_reformulate(benchmark::State& state, Fn fn) {
  const auto w = instance_of_order(static_cast<std::size_t>(state.range(0)));
  const auto& pv = *w.provenance;
  for (auto _ : state) benchmark::DoNotOptimize(fn(w.clean.A, pv.G, pv.T));
}

template <class Fn>
void run_congruence(benchmark::State& state, Fn fn) {
  const auto w = instance_of_order(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fn(w.clean.A.back(), w.provenance->T));
}

template <class Fn>
void run_inner(benchmark::State& state, Fn fn) {
  const auto w = instance_of_order(static_cast<std::size_t>(state.range(0)));
  const auto& messy = w.provenance->messy;
  for (auto _ : state) benchmark::DoNotOptimize(fn(messy.A, messy.A));
}

void BM_ReformulateSerial(benchmark::State& s) {
  run_reformulate(s, [](auto& a, auto& g, auto& t) { return kernels::serial::reformulate(a, g, t); });
}
void BM_ReformulateParallel(benchmark::State& s) {
  run_reformulate(s, [](auto& a, auto& g, auto& t) { return kernels::parallel::reformulate(a, g, t); });
}
void BM_CongruenceSerial(benchmark::State& s) {
  run_congruence(s, [](auto& a, auto& t) { return kernels::serial::congruence(a, t); });
}
void BM_CongruenceParallel(benchmark::State& s) {
  run_congruence(s, [](auto& a, auto& t) { return kernels::parallel::congruence(a, t); });
}
void BM_InnerSerial(benchmark::State& s) {
  run_inner(s, [](auto& a, auto& x) { return kernels::serial::inner_products(a, x); });
}
void BM_InnerParallel(benchmark::State& s) {
  run_inner(s, [](auto& a, auto& x) { return kernels::parallel::inner_products(a, x); });
}

}  // namespace

BENCHMARK(BM_ReformulateSerial)->Arg(10)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ReformulateParallel)->Arg(10)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_CongruenceSerial)->Arg(10)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CongruenceParallel)->Arg(10)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_InnerSerial)->Arg(10)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_InnerParallel)->Arg(10)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
