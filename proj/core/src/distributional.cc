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

#include "psp/distributional.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>

#include "psp/bundle.h"
#include "psp/ctc_align.h"
#include "psp/error.h"

namespace psp {
namespace {

// Symmetric PSD square root; negative eigenvalues are clamped to zero.
Matrix SymmetricSqrt(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::kEigenFailure, "eigendecomposition did not converge");
  }
  const Eigen::VectorXd roots = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return solver.eigenvectors() * roots.asDiagonal() * solver.eigenvectors().transpose();
}

double TraceSqrt(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::kEigenFailure, "eigendecomposition did not converge");
  }
  return solver.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
}

}  // namespace

GaussianSummary FitGaussian(const Matrix& rows) {
  if (rows.rows() < 2) {
    throw Error(ErrorCode::kTooFewSamples,
                "need at least 2 samples, got " + std::to_string(rows.rows()));
  }
  GaussianSummary g;
  g.n = rows.rows();
  g.mean = rows.colwise().mean().transpose();
  const Matrix centered = rows.rowwise() - g.mean.transpose();
  const Matrix cov = (centered.transpose() * centered) / static_cast<double>(g.n - 1);
  g.cov = 0.5 * (cov + cov.transpose());
  return g;
}

FrechetResult FrechetResult::FromParts(double mean_dist, double trace_term) {
  return {mean_dist * mean_dist + trace_term, mean_dist, trace_term};
}

FrechetResult Frechet(const GaussianSummary& a, const GaussianSummary& b, double eps) {
  if (a.dim() != b.dim() || a.cov.rows() != a.dim() || b.cov.rows() != b.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "Gaussians differ in dimension");
  }
  if (!(eps >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "eps must be non-negative");
  const int d = a.dim();
  const Matrix identity = Matrix::Identity(d, d);
  const Matrix cov_a = 0.5 * (a.cov + a.cov.transpose()) + eps * identity;
  const Matrix cov_b = 0.5 * (b.cov + b.cov.transpose()) + eps * identity;

  const Matrix root_a = SymmetricSqrt(cov_a);
  Matrix inner = root_a * cov_b * root_a;
  inner = 0.5 * (inner + inner.transpose());
  const double trace_term = cov_a.trace() + cov_b.trace() - 2.0 * TraceSqrt(inner);
  return FrechetResult::FromParts((a.mean - b.mean).norm(), trace_term);
}

double Npvi(std::span<const double> intervals) {
  if (intervals.size() < 2) {
    throw Error(ErrorCode::kTooFewIntervals, "nPVI needs at least 2 intervals");
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < intervals.size(); ++k) {
    if (!(intervals[k] > 0.0)) {
      throw Error(ErrorCode::kNonPositiveInterval, "interval " + std::to_string(k) +
                                                       " is not positive");
    }
    if (k + 1 < intervals.size()) {
      const double a = intervals[k];
      const double b = intervals[k + 1];
      sum += std::abs(a - b) / ((a + b) / 2.0);
    }
  }
  return 100.0 * sum / static_cast<double>(intervals.size() - 1);
}

Eigen::Matrix<double, 1, kProsodicDims> ProsodicVector::AsRow() const {
  Eigen::Matrix<double, 1, kProsodicDims> row;
  row << pitch_range, logf0_mean, speech_rate, npvi, log_duration;
  return row;
}

double Percentile(std::span<const double> values, double q) {
  if (values.empty()) throw Error(ErrorCode::kEmptyInput, "percentile of empty set");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double pos = std::clamp(q, 0.0, 100.0) / 100.0 * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

ProsodicVector ComputeProsodicVector(const UtteranceBundle& bundle,
                                     std::span<const AlignmentSpan> spans) {
  std::vector<double> log_f0;
  for (Eigen::Index t = 0; t < bundle.f0_hz.size(); ++t) {
    if (bundle.f0_hz[t] > 0.0) log_f0.push_back(std::log(bundle.f0_hz[t]));
  }
  if (log_f0.empty()) throw Error(ErrorCode::kNoVoicedFrames, bundle.id + ": no voiced frames");

  // Onset-to-onset intervals; spans sharing an onset merge into one.
  const double seconds_per_frame = bundle.frame_hop_ms / 1000.0;
  std::vector<double> intervals;
  for (std::size_t i = 1; i < spans.size(); ++i) {
    const double gap = (spans[i].start_frame - spans[i - 1].start_frame) * seconds_per_frame;
    if (gap > 0.0) intervals.push_back(gap);
  }
  if (intervals.size() < 2) {
    throw Error(ErrorCode::kTooFewSpans,
                bundle.id + ": need at least 3 aligned graphemes with distinct onsets");
  }

  ProsodicVector v;
  v.pitch_range = Percentile(log_f0, 95.0) - Percentile(log_f0, 5.0);
  double sum = 0.0;
  for (double x : log_f0) sum += x;
  v.logf0_mean = sum / static_cast<double>(log_f0.size());
  v.speech_rate = static_cast<double>(spans.size()) / bundle.duration_s;
  v.npvi = Npvi(intervals);
  v.log_duration = std::log(bundle.duration_s);
  return v;
}

FrechetResult Psd(const Matrix& system_vectors, const Matrix& native_vectors, bool zscore,
                  double eps) {
  if (system_vectors.cols() != native_vectors.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "prosodic matrices differ in width");
  }
  if (!zscore) return Frechet(FitGaussian(system_vectors), FitGaussian(native_vectors), eps);

  const GaussianSummary native = FitGaussian(native_vectors);
  Eigen::RowVectorXd scale = native.cov.diagonal().cwiseSqrt().transpose();
  for (Eigen::Index j = 0; j < scale.size(); ++j) {
    if (!(scale[j] > 0.0)) scale[j] = 1.0;
  }
  auto standardize = [&](const Matrix& m) {
    Matrix out = m.rowwise() - native.mean.transpose();
    return Matrix(out.array().rowwise() / scale.array());
  };
  return Frechet(FitGaussian(standardize(system_vectors)),
                 FitGaussian(standardize(native_vectors)), eps);
}

}  // namespace psp
