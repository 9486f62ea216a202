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

#ifndef PSP_DISTRIBUTIONAL_H_
#define PSP_DISTRIBUTIONAL_H_

#include <span>

#include "psp/types.h"

namespace psp {

struct UtteranceBundle;
struct AlignmentSpan;

struct GaussianSummary {
  Vector mean;
  Matrix cov;
  long n = 0;

  int dim() const { return static_cast<int>(mean.size()); }
};

// Sample mean and unbiased (N-1) covariance, symmetrized.
// Throws Error(kTooFewSamples) when rows.rows() < 2.
GaussianSummary FitGaussian(const Matrix& rows);

struct FrechetResult {
  double total = 0.0;       // mean_dist^2 + trace_term
  double mean_dist = 0.0;   // ||mu_a - mu_b||
  double trace_term = 0.0;  // tr(Ca + Cb - 2 (Ca^1/2 Cb Ca^1/2)^1/2)

  static FrechetResult FromParts(double mean_dist, double trace_term);
};

// Frechet distance between two Gaussians. `eps` is added to the diagonal of
// both covariances before the matrix square roots, which are taken through a
// symmetric eigendecomposition with negative eigenvalues clamped to zero.
FrechetResult Frechet(const GaussianSummary& a, const GaussianSummary& b,
                      double eps = kDefaultFrechetEpsilon);

// Normalized pairwise variability index:
//   100/(m-1) * sum |d_k - d_{k+1}| / ((d_k + d_{k+1}) / 2)
double Npvi(std::span<const double> intervals);

inline constexpr int kProsodicDims = 5;

struct ProsodicVector {
  double pitch_range = 0.0;  // 95th - 5th percentile of ln F0 over voiced frames
  double logf0_mean = 0.0;
  double speech_rate = 0.0;  // aligned graphemes per second
  double npvi = 0.0;         // over onset-to-onset intervals
  double log_duration = 0.0;

  Eigen::Matrix<double, 1, kProsodicDims> AsRow() const;
};

// Linear-interpolation percentile (q in [0, 100]) of unsorted values.
double Percentile(std::span<const double> values, double q);

// Throws kNoVoicedFrames, or kTooFewSpans when fewer than three spans leave
// less than two inter-onset intervals.
ProsodicVector ComputeProsodicVector(const UtteranceBundle& bundle,
                                     std::span<const AlignmentSpan> spans);

// Frechet distance in prosodic space. With `zscore`, both sets are
// standardized by the native set's per-dimension mean and sample standard
// deviation first.
FrechetResult Psd(const Matrix& system_vectors, const Matrix& native_vectors,
                  bool zscore = false, double eps = kDefaultFrechetEpsilon);

}  // namespace psp

#endif  // PSP_DISTRIBUTIONAL_H_
