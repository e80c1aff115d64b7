#include <benchmark/benchmark.h>

#include "netxmit/coding.hpp"

using namespace netxmit;

namespace {

ProbabilityModel skewed(std::size_t n) {
  Rng rng(3);
  std::vector<double> w(n);
  for (double& x : w) x = 1.0 / (uniform01(rng) + 1e-3);
  return ProbabilityModel(std::move(w), ModelSource::DegreePredicted);
}

void BM_HuffmanBuild(benchmark::State& state) {
  const auto m = skewed(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(huffman_build(m));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_HuffmanBuild)->RangeMultiplier(4)->Range(64, 65536)->Complexity(benchmark::oNLogN);

void BM_EncodeDecode(benchmark::State& state) {
  const auto m = skewed(1000);
  const CodeBook book = huffman_build(m);
  Rng rng(4);
  std::vector<NodeId> seq(100'000);
  for (auto& s : seq) s = static_cast<NodeId>(uniform_below(rng, 1000));
  for (auto _ : state) {
    auto bits = encode(seq, book);
    benchmark::DoNotOptimize(decode(bits, book));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(seq.size()));
}
BENCHMARK(BM_EncodeDecode)->Unit(benchmark::kMillisecond);

}  // namespace
