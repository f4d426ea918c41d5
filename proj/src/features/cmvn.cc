// src/features/cmvn.cc

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

#include <algorithm>
#include <cmath>

#include "s2t/error.h"
#include "s2t/features.h"

namespace s2t {
namespace {

// Two-pass moments of one column, shared by both kernels.
void NormalizeColumn(const FeatureMatrix &in, std::size_t c, FeatureMatrix &out) {
  const std::size_t t = in.num_frames();
  double mean = 0.0;
  for (std::size_t r = 0; r < t; ++r) mean += in(r, c);
  mean /= static_cast<double>(t);
  double var = 0.0;
  for (std::size_t r = 0; r < t; ++r) {
    const double d = in(r, c) - mean;
    var += d * d;
  }
  var /= static_cast<double>(t);
  const double inv = 1.0 / std::max(std::sqrt(var), kCmvnStdFloor);
  for (std::size_t r = 0; r < t; ++r)
    out(r, c) = static_cast<float>((in(r, c) - mean) * inv);
}

void CheckNonEmpty(const FeatureMatrix &feat) {
  if (feat.num_frames() == 0)
    throw Error(ErrorCode::kInvalidArgument, "CMVN needs at least one frame");
}

}  // namespace

FeatureMatrix UtteranceCmvnSerial(const FeatureMatrix &feat) {
  CheckNonEmpty(feat);
  FeatureMatrix out(feat.num_frames(), feat.feature_dim());
  for (std::size_t c = 0; c < feat.feature_dim(); ++c)
    NormalizeColumn(feat, c, out);
  return out;
}

FeatureMatrix UtteranceCmvn(const FeatureMatrix &feat) {
  CheckNonEmpty(feat);
  FeatureMatrix out(feat.num_frames(), feat.feature_dim());
  const auto dim = static_cast<std::int64_t>(feat.feature_dim());
#pragma omp parallel for schedule(static)
  for (std::int64_t c = 0; c < dim; ++c)
    NormalizeColumn(feat, static_cast<std::size_t>(c), out);
  return out;
}

FeatureMatrix ApplyCmvn(const FeatureMatrix &feat, std::span<const double> mean,
                        std::span<const double> stddev) {
  if (mean.size() != feat.feature_dim() || stddev.size() != feat.feature_dim())
    throw Error(ErrorCode::kDimensionMismatch,
                "CMVN statistics have dimension " + std::to_string(mean.size()) +
                    ", features have " + std::to_string(feat.feature_dim()));
  FeatureMatrix out(feat.num_frames(), feat.feature_dim());
  for (std::size_t r = 0; r < feat.num_frames(); ++r)
    for (std::size_t c = 0; c < feat.feature_dim(); ++c)
      out(r, c) = static_cast<float>(
          (feat(r, c) - mean[c]) / std::max(stddev[c], kCmvnStdFloor));
  return out;
}

void GcmvnStats::Accumulate(const FeatureMatrix &feat) {
  if (count_ == 0 && sum_.empty()) {
    sum_.assign(feat.feature_dim(), 0.0);
    sum_sq_.assign(feat.feature_dim(), 0.0);
  } else if (feat.feature_dim() != sum_.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "accumulating dimension " + std::to_string(feat.feature_dim()) +
                    " into stats of dimension " + std::to_string(sum_.size()));
  }
  for (std::size_t r = 0; r < feat.num_frames(); ++r) {
    for (std::size_t c = 0; c < sum_.size(); ++c) {
      const double v = feat(r, c);
      sum_[c] += v;
      sum_sq_[c] += v * v;
    }
  }
  count_ += feat.num_frames();
}

void GcmvnStats::Merge(const GcmvnStats &other) {
  if (other.sum_.empty()) return;
  if (sum_.empty()) {
    *this = other;
    return;
  }
  if (other.sum_.size() != sum_.size())
    throw Error(ErrorCode::kDimensionMismatch, "merging stats of different dims");
  for (std::size_t c = 0; c < sum_.size(); ++c) {
    sum_[c] += other.sum_[c];
    sum_sq_[c] += other.sum_sq_[c];
  }
  count_ += other.count_;
}

CmvnMoments GcmvnStats::Finalize() const {
  if (count_ == 0)
    throw Error(ErrorCode::kEmptyStats, "no frames accumulated");
  CmvnMoments m;
  m.mean.resize(sum_.size());
  m.stddev.resize(sum_.size());
  const auto n = static_cast<double>(count_);
  for (std::size_t c = 0; c < sum_.size(); ++c) {
    m.mean[c] = sum_[c] / n;
    const double var = std::max(0.0, sum_sq_[c] / n - m.mean[c] * m.mean[c]);
    m.stddev[c] = std::max(std::sqrt(var), kCmvnStdFloor);
  }
  return m;
}

}  // namespace s2t
