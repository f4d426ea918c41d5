// bench/bench.cc

// Copyright 2026  The s2tkit Authors

// See the top-level LICENSE file for clarification regarding multiple authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

// Serial reference kernels against their OpenMP counterparts.
// Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "s2t/audio.h"
#include "s2t/features.h"
#include "s2t/rng.h"
#include "s2t/scorers.h"

namespace {

s2t::Waveform Noise(double seconds) {
  s2t::Rng rng(1);
  s2t::Waveform w;
  w.sample_rate = 16000;
  w.samples.resize(static_cast<std::size_t>(seconds * 16000));
  for (float &s : w.samples) s = static_cast<float>(0.1 * rng.Gauss());
  return w;
}

s2t::FeatureMatrix Features(std::size_t frames) {
  s2t::Rng rng(2);
  s2t::FeatureMatrix m(frames, 80);
  for (float &v : m.data()) v = static_cast<float>(rng.Gauss() * 3.0 + 10.0);
  return m;
}

std::pair<std::vector<std::string>, std::vector<std::string>> Corpus(std::size_t n) {
  s2t::Rng rng(3);
  std::vector<std::string> refs, hyps;
  for (std::size_t i = 0; i < n; ++i) {
    std::string r, h;
    for (int k = 0; k < 25; ++k) {
      const std::string w = "w" + std::to_string(rng.UniformInt(0, 300));
      r += w + " ";
      h += (rng.Uniform01() < 0.2 ? "x" + std::to_string(rng.UniformInt(0, 300)) : w) + " ";
    }
    refs.push_back(r);
    hyps.push_back(h);
  }
  return {refs, hyps};
}

void BM_FbankSerial(benchmark::State &state) {
  const s2t::Waveform w = Noise(static_cast<double>(state.range(0)));
  const s2t::FbankComputer fbank(s2t::FbankConfig{}, 16000);
  for (auto _ : state) benchmark::DoNotOptimize(fbank.ComputeSerial(w));
}

void BM_FbankParallel(benchmark::State &state) {
  const s2t::Waveform w = Noise(static_cast<double>(state.range(0)));
  const s2t::FbankComputer fbank(s2t::FbankConfig{}, 16000);
  for (auto _ : state) benchmark::DoNotOptimize(fbank.Compute(w));
}

void BM_CmvnSerial(benchmark::State &state) {
  const s2t::FeatureMatrix m = Features(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(s2t::UtteranceCmvnSerial(m));
}

void BM_CmvnParallel(benchmark::State &state) {
  const s2t::FeatureMatrix m = Features(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(s2t::UtteranceCmvn(m));
}

void BM_ResampleSerial(benchmark::State &state) {
  const s2t::Waveform w = Noise(static_cast<double>(state.range(0)));
  const std::size_t out = static_cast<std::size_t>(w.samples.size() / 1.1);
  for (auto _ : state) benchmark::DoNotOptimize(s2t::ResampleByStepSerial(w.samples, 1.1, out));
}

void BM_ResampleParallel(benchmark::State &state) {
  const s2t::Waveform w = Noise(static_cast<double>(state.range(0)));
  const std::size_t out = static_cast<std::size_t>(w.samples.size() / 1.1);
  for (auto _ : state) benchmark::DoNotOptimize(s2t::ResampleByStep(w.samples, 1.1, out));
}

void BM_WerSerial(benchmark::State &state) {
  const auto [refs, hyps] = Corpus(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(s2t::WerSerial(refs, hyps));
}

void BM_WerParallel(benchmark::State &state) {
  const auto [refs, hyps] = Corpus(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(s2t::Wer(refs, hyps));
}

}  // namespace

BENCHMARK(BM_FbankSerial)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FbankParallel)->Arg(10)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_CmvnSerial)->Arg(3000)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_CmvnParallel)->Arg(3000)->Unit(benchmark::kMicrosecond)->UseRealTime();
BENCHMARK(BM_ResampleSerial)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ResampleParallel)->Arg(2)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_WerSerial)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WerParallel)->Arg(2000)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
