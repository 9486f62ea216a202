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

#ifndef PSP_BOOTSTRAP_H_
#define PSP_BOOTSTRAP_H_

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "psp/types.h"

namespace psp {

// Portable random streams. Every stream is a std::mt19937_64 seeded with
// SplitMix64(seed, stream); bounded draws use rejection on the raw 64-bit
// output so results do not depend on the standard library's distributions.
std::uint64_t SplitMix64(std::uint64_t seed, std::uint64_t stream);
std::mt19937_64 MakeStream(std::uint64_t seed, std::uint64_t stream);
// Uniform integer in [0, n). n must be positive.
std::uint64_t UniformIndex(std::mt19937_64& rng, std::uint64_t n);
// Fisher-Yates on top of UniformIndex.
template <typename T>
void PortableShuffle(std::vector<T>& items, std::mt19937_64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::swap(items[i - 1], items[UniformIndex(rng, i)]);
  }
}

enum class ResampleUnit { kUtterance, kToken };
enum class BootstrapStatistic { kPooledMean, kCollapseRate };

struct BootstrapConfig {
  int replicates = 1000;
  double alpha = 0.05;
  std::uint64_t seed = 0;
  ResampleUnit unit = ResampleUnit::kUtterance;
  int threads = 1;

  // Throws Error(kInvalidArgument) unless replicates >= 100 and 0 < alpha < 1.
  void Validate() const;
};

struct Interval {
  double low = 0.0;
  double high = 0.0;
};

// A statistic evaluated on one resample, given as indices into the
// resampled units (with repetition).
using ResampleStatistic = std::function<double(std::span<const std::size_t>)>;

// Replicate r draws `n_units` indices from stream (seed, r). The output is
// independent of config.threads.
std::vector<double> BootstrapReplicates(std::size_t n_units, const ResampleStatistic& statistic,
                                        const BootstrapConfig& config);

// Inverse-CDF percentile interval: the ceil(R*alpha/2)-th and
// ceil(R*(1-alpha/2))-th order statistics.
Interval PercentileInterval(std::vector<double> replicates, double alpha);

// Percentile CI for a pooled token statistic over per-utterance token lists.
// kCollapseRate counts values strictly below `tau`. Utterances without
// tokens are ignored. Throws Error(kEmptyInput) when no token remains.
Interval BootstrapCi(const std::vector<std::vector<double>>& groups,
                     BootstrapStatistic statistic, const BootstrapConfig& config,
                     double tau = kDefaultCollapseThreshold);

}  // namespace psp

#endif  // PSP_BOOTSTRAP_H_
