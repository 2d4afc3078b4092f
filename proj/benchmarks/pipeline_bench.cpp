#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "sftok/aggregator.hpp"
#include "sftok/encoder.hpp"
#include "sftok/pooling.hpp"

namespace {

sftok::FeatureGrid make_features(std::size_t n, std::size_t channels) {
  std::mt19937 rng(42);
  std::uniform_real_distribution<float> dist(-1.0f, 1.0f);
  std::vector<float> data(n * 24 * 24 * channels);
  for (auto& v : data) v = dist(rng);
  return sftok::FeatureGrid({n, 24, 24, channels}, std::move(data));
}

void BM_StridePool(benchmark::State& state) {
  const auto grid = make_features(10, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sftok::avg_pool_stride(grid, 2, 1));
  state.SetBytesProcessed(state.iterations() * grid.data().size() * sizeof(float));
}
BENCHMARK(BM_StridePool)->Arg(3)->Arg(1024)->Arg(4096);

void BM_AdaptivePool(benchmark::State& state) {
  const auto grid = make_features(50, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sftok::adaptive_avg_pool(grid, 4, 4));
  state.SetBytesProcessed(state.iterations() * grid.data().size() * sizeof(float));
}
BENCHMARK(BM_AdaptivePool)->Arg(3)->Arg(1024)->Arg(4096);

void BM_Aggregate(benchmark::State& state) {
  const auto grid = make_features(50, static_cast<std::size_t>(state.range(0)));
  const sftok::PathwayConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(sftok::aggregate(grid, cfg));
  state.counters["tokens"] = static_cast<double>(sftok::token_count(cfg, 24, 24));
}
BENCHMARK(BM_Aggregate)->Arg(3)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_ToyEncode(benchmark::State& state) {
  sftok::VideoFrames frames;
  std::mt19937 rng(1);
  for (int f = 0; f < 50; ++f) {
    sftok::Image img{sftok::kFrameSize, sftok::kFrameSize,
                     std::vector<std::uint8_t>(sftok::kFrameSize * sftok::kFrameSize * 3)};
    for (auto& p : img.rgb) p = static_cast<std::uint8_t>(rng());
    frames.frames.push_back(std::move(img));
  }
  for (auto _ : state) benchmark::DoNotOptimize(sftok::encode_frames(frames, sftok::EncoderSpec{}));
}
BENCHMARK(BM_ToyEncode)->Unit(benchmark::kMillisecond);

void BM_TokenCount(benchmark::State& state) {
  const sftok::PathwayConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(sftok::token_count(cfg, 24, 24));
}
BENCHMARK(BM_TokenCount);

}  // namespace

BENCHMARK_MAIN();
