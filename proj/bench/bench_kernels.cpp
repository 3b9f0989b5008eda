// Serial reference vs OpenMP kernels, plus end-to-end extraction.

#include <benchmark/benchmark.h>

#include <map>

#include "edgeprint/edges.hpp"
#include "edgeprint/features.hpp"
#include "edgeprint/synth.hpp"

namespace {

using namespace edgeprint;

const GrayImage& sample_image(int scale) {
  static const GrayImage base = generate_synthetic(benchmark_synth_spec()).front().image;
  static std::map<int, GrayImage> cache;
  auto it = cache.find(scale);
  if (it != cache.end()) return it->second;
  std::vector<std::uint8_t> px(static_cast<std::size_t>(base.width()) * scale *
                               base.height() * scale);
  const int w = base.width() * scale;
  for (int r = 0; r < base.height() * scale; ++r)
    for (int c = 0; c < w; ++c)
      px[static_cast<std::size_t>(r) * w + c] = base.at(r / scale, c / scale);
  return cache.emplace(scale, GrayImage(w, base.height() * scale, std::move(px))).first->second;
}

void BM_Convolve3Serial(benchmark::State& state) {
  const GrayImage& img = sample_image(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(serial::convolve3(img, kLaplacian));
  state.SetItemsProcessed(state.iterations() * img.width() * img.height());
}

void BM_Convolve3Parallel(benchmark::State& state) {
  const GrayImage& img = sample_image(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(convolve3(img, kLaplacian));
  state.SetItemsProcessed(state.iterations() * img.width() * img.height());
}

void BM_SobelSerial(benchmark::State& state) {
  const GrayImage& img = sample_image(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(serial::sobel_magnitude(img));
  state.SetItemsProcessed(state.iterations() * img.width() * img.height());
}

void BM_SobelParallel(benchmark::State& state) {
  const GrayImage& img = sample_image(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sobel_magnitude(img));
  state.SetItemsProcessed(state.iterations() * img.width() * img.height());
}

void BM_Extract(benchmark::State& state) {
  const GrayImage& img = sample_image(1);
  const ExtractionConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(extract(img, cfg));
}

}  // namespace

BENCHMARK(BM_Convolve3Serial)->Arg(1)->Arg(4)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Convolve3Parallel)->Arg(1)->Arg(4)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SobelSerial)->Arg(1)->Arg(4)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SobelParallel)->Arg(1)->Arg(4)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Extract)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
