// Copyright 2026 The vowelprint Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Serial reference vs OpenMP frame analysis.

#include <benchmark/benchmark.h>

#include "vowelprint/pipeline.hpp"
#include "vowelprint/synth.hpp"

namespace vp = vowelprint;

namespace {

const vp::AudioBuffer& input() {
  static const vp::AudioBuffer buf =
      vp::concat({vp::render_vowel("a", 140, 2.0, 16000), vp::render_vowel("ы", 140, 2.0, 16000),
                  vp::render_vowel("и", 210, 2.0, 16000)});
  return buf;
}

// Renders the input and builds FFT plans outside the timed loop.
vp::AnalysisConfig config(std::size_t hop) {
  vp::AnalysisConfig cfg;
  cfg.frame.hop_length = hop;
  vp::analyze_frame(input(), cfg, 0, vp::window_coefficients(cfg.frame.window, cfg.frame.frame_length));
  return cfg;
}

void BM_FramesSerial(benchmark::State& state) {
  const auto cfg = config(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(vp::analyze_frames_serial(input(), cfg));
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(vp::frame_count(input().size(), cfg.frame)));
}

void BM_FramesParallel(benchmark::State& state) {
  const auto cfg = config(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(vp::analyze_frames(input(), cfg));
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(vp::frame_count(input().size(), cfg.frame)));
}

void BM_RenderVowel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(vp::render_vowel("o", 150, 1.0, 16000));
}

}  // namespace

BENCHMARK(BM_FramesSerial)->Arg(1024)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FramesParallel)->Arg(1024)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RenderVowel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
