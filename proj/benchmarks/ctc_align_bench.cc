// Copyright 2026 The PSP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "psp/ctc_align.h"

namespace {

void BM_ForceAlign(benchmark::State& state) {
  const int frames = static_cast<int>(state.range(0));
  const int vocab = 64;
  const int targets_n = frames / 4;
  std::mt19937_64 rng(1);
  std::normal_distribution<double> z(0.0, 2.0);
  psp::Matrix e(frames, vocab);
  for (int t = 0; t < frames; ++t) {
    double s = 0.0;
    for (int v = 0; v < vocab; ++v) {
      e(t, v) = z(rng);
      s += std::exp(e(t, v));
    }
    e.row(t).array() -= std::log(s);
  }
  std::vector<int> targets(targets_n);
  for (int& t : targets) t = 1 + static_cast<int>(rng() % (vocab - 1));
  for (auto _ : state) benchmark::DoNotOptimize(psp::ForceAlign(e, targets, 0));
  state.SetItemsProcessed(state.iterations() * frames);
}
BENCHMARK(BM_ForceAlign)->Arg(100)->Arg(500)->Arg(2000);

void BM_GreedyFrames(benchmark::State& state) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> z(0.0, 1.0);
  psp::Matrix e(state.range(0), 64);
  for (Eigen::Index i = 0; i < e.size(); ++i) e.data()[i] = z(rng);
  for (auto _ : state) benchmark::DoNotOptimize(psp::GreedyFrames(e));
}
BENCHMARK(BM_GreedyFrames)->Arg(500);

}  // namespace
