#include <benchmark/benchmark.h>

#include "cabdm/baselines.hpp"
#include "cabdm/bdm.hpp"
#include "cabdm/ca.hpp"
#include "cabdm/ctm.hpp"

namespace {

using namespace cabdm;

const CtmTable& table() {
  static const CtmTable t = [] {
    BuildOptions o;
    o.states = 3;
    return build_table(o);
  }();
  return t;
}

Spacetime sample_spacetime() {
  return evolve_eca(rule_table(54), random_config(3, 100, 0.5), 80);
}

void BM_Bdm1d(benchmark::State& state) {
  const Spacetime st = sample_spacetime();
  const CtmTable& t = table();
  for (auto _ : state) benchmark::DoNotOptimize(bdm_spacetime(st, t, 6));
}
BENCHMARK(BM_Bdm1d);

void BM_Bdm2d(benchmark::State& state) {
  const Grid g = random_grid(5, 64, 64, 0.5);
  const CtmTable& t = table();
  for (auto _ : state) benchmark::DoNotOptimize(bdm_2d(g, t, 2));
}
BENCHMARK(BM_Bdm2d);

void BM_Lzw(benchmark::State& state) {
  const Spacetime st = sample_spacetime();
  for (auto _ : state) benchmark::DoNotOptimize(compressed_size(st));
}
BENCHMARK(BM_Lzw);

void BM_BlockEntropy(benchmark::State& state) {
  const std::string bits = spacetime_bits(sample_spacetime());
  for (auto _ : state) benchmark::DoNotOptimize(shannon_block_entropy(bits, 6));
}
BENCHMARK(BM_BlockEntropy);

}  // namespace
