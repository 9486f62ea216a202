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

#include "psp/bootstrap.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "psp/error.h"

namespace psp {

std::uint64_t SplitMix64(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + (stream + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::mt19937_64 MakeStream(std::uint64_t seed, std::uint64_t stream) {
  return std::mt19937_64(SplitMix64(seed, stream));
}

std::uint64_t UniformIndex(std::mt19937_64& rng, std::uint64_t n) {
  // Reject the top sliver so every residue is equally likely.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

void BootstrapConfig::Validate() const {
  if (replicates < 100) {
    throw Error(ErrorCode::kInvalidArgument, "bootstrap needs at least 100 replicates");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "bootstrap alpha must lie in (0, 1)");
  }
  if (threads < 1) throw Error(ErrorCode::kInvalidArgument, "threads must be positive");
}

std::vector<double> BootstrapReplicates(std::size_t n_units, const ResampleStatistic& statistic,
                                        const BootstrapConfig& config) {
  config.Validate();
  if (n_units == 0) throw Error(ErrorCode::kEmptyInput, "nothing to resample");

  std::vector<double> out(config.replicates);
  auto run = [&](int first, int last) {
    std::vector<std::size_t> draw(n_units);
    for (int r = first; r < last; ++r) {
      std::mt19937_64 rng = MakeStream(config.seed, static_cast<std::uint64_t>(r));
      for (std::size_t& idx : draw) idx = UniformIndex(rng, n_units);
      out[r] = statistic(draw);
    }
  };

  const int threads = std::min(config.threads, config.replicates);
  if (threads <= 1) {
    run(0, config.replicates);
    return out;
  }
  std::vector<std::jthread> workers;
  const int chunk = (config.replicates + threads - 1) / threads;
  for (int first = 0; first < config.replicates; first += chunk) {
    workers.emplace_back(run, first, std::min(first + chunk, config.replicates));
  }
  workers.clear();
  return out;
}

Interval PercentileInterval(std::vector<double> replicates, double alpha) {
  if (replicates.empty()) throw Error(ErrorCode::kEmptyInput, "no replicates");
  std::sort(replicates.begin(), replicates.end());
  const auto n = static_cast<double>(replicates.size());
  auto order_stat = [&](double p) {
    // Smallest value whose empirical CDF reaches p.
    const double rank = std::ceil(p * n - 1e-9);
    const auto idx = static_cast<std::size_t>(std::clamp(rank, 1.0, n)) - 1;
    return replicates[idx];
  };
  return {order_stat(alpha / 2.0), order_stat(1.0 - alpha / 2.0)};
}

Interval BootstrapCi(const std::vector<std::vector<double>>& groups,
                     BootstrapStatistic statistic, const BootstrapConfig& config, double tau) {
  // Per-unit (sum, count) so that a replicate only needs index lookups.
  std::vector<std::pair<double, double>> units;
  auto value_of = [&](double v) {
    return statistic == BootstrapStatistic::kCollapseRate ? (v < tau ? 1.0 : 0.0) : v;
  };
  for (const std::vector<double>& group : groups) {
    if (config.unit == ResampleUnit::kToken) {
      for (double v : group) units.emplace_back(value_of(v), 1.0);
    } else if (!group.empty()) {
      double sum = 0.0;
      for (double v : group) sum += value_of(v);
      units.emplace_back(sum, static_cast<double>(group.size()));
    }
  }
  if (units.empty()) throw Error(ErrorCode::kEmptyInput, "no tokens to bootstrap");

  const std::vector<double> reps = BootstrapReplicates(
      units.size(),
      [&units](std::span<const std::size_t> draw) {
        double sum = 0.0;
        double count = 0.0;
        for (std::size_t i : draw) {
          sum += units[i].first;
          count += units[i].second;
        }
        return sum / count;
      },
      config);
  return PercentileInterval(reps, config.alpha);
}

}  // namespace psp
