// src/transforms/specaugment.cc

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
#include "s2t/transforms.h"

namespace s2t {

void SpecAugmentConfig::Validate() const {
  if (freq_mask_param < 0 || num_freq_masks < 0 || time_mask_param < 0 ||
      num_time_masks < 0)
    throw Error(ErrorCode::kBadParams, "SpecAugment parameters must be >= 0");
  if (!(time_mask_p >= 0.0 && time_mask_p <= 1.0))
    throw Error(ErrorCode::kBadParams, "time_mask_p must lie in [0, 1]");
}

SpecAugmentConfig SpecAugmentConfig::LB() {
  return {.freq_mask_param = 27, .num_freq_masks = 1, .time_mask_param = 100,
          .num_time_masks = 1, .time_mask_p = 1.0};
}

SpecAugmentConfig SpecAugmentConfig::LD() {
  return {.freq_mask_param = 27, .num_freq_masks = 2, .time_mask_param = 100,
          .num_time_masks = 2, .time_mask_p = 1.0};
}

FeatureMatrix SpecAugment(const FeatureMatrix &feat, const SpecAugmentConfig &cfg,
                          Rng &rng, std::vector<AppliedMask> *masks) {
  cfg.Validate();
  FeatureMatrix out = feat;
  const auto frames = static_cast<std::int64_t>(feat.num_frames());
  const auto bins = static_cast<std::int64_t>(feat.feature_dim());
  if (frames == 0 || bins == 0) return out;

  float fill = 0.0f;
  if (cfg.fill == MaskFill::kMean) {
    double sum = 0.0;
    for (float v : feat.data()) sum += v;
    fill = static_cast<float>(sum / static_cast<double>(feat.data().size()));
  }

  const std::int64_t max_f = std::min<std::int64_t>(cfg.freq_mask_param, bins);
  for (int i = 0; i < cfg.num_freq_masks; ++i) {
    const std::int64_t width = rng.UniformInt(0, max_f);
    const std::int64_t start = rng.UniformInt(0, bins - width);
    for (std::int64_t r = 0; r < frames; ++r)
      for (std::int64_t c = start; c < start + width; ++c) out(r, c) = fill;
    if (masks)
      masks->push_back({AppliedMask::Axis::kFrequency,
                        static_cast<std::size_t>(start),
                        static_cast<std::size_t>(width)});
  }

  const auto p_cap =
      static_cast<std::int64_t>(std::floor(cfg.time_mask_p * static_cast<double>(frames)));
  const std::int64_t max_t = std::min<std::int64_t>(cfg.time_mask_param, p_cap);
  for (int i = 0; i < cfg.num_time_masks; ++i) {
    const std::int64_t width = rng.UniformInt(0, max_t);
    const std::int64_t start = rng.UniformInt(0, frames - width);
    for (std::int64_t r = start; r < start + width; ++r)
      std::fill(out.Row(r).begin(), out.Row(r).end(), fill);
    if (masks)
      masks->push_back({AppliedMask::Axis::kTime, static_cast<std::size_t>(start),
                        static_cast<std::size_t>(width)});
  }
  return out;
}

}  // namespace s2t
