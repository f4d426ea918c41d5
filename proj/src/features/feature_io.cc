// src/features/feature_io.cc

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

#include <bit>
#include <cstring>

#include "common/byte_io.h"
#include "s2t/error.h"
#include "s2t/features.h"

namespace s2t {

static_assert(sizeof(float) == 4);

std::vector<std::uint8_t> SerializeFeatures(const FeatureMatrix &feat) {
  std::vector<std::uint8_t> out(16 + feat.data().size() * 4);
  std::memcpy(out.data(), kFeatureMagic, 8);
  out.resize(8);
  internal::AppendLe32(&out, static_cast<std::uint32_t>(feat.num_frames()));
  internal::AppendLe32(&out, static_cast<std::uint32_t>(feat.feature_dim()));
  for (float v : feat.data()) internal::AppendLe32(&out, std::bit_cast<std::uint32_t>(v));
  return out;
}

bool IsFeatureFile(std::span<const std::uint8_t> bytes) {
  return internal::HasPrefix(bytes, std::string_view(kFeatureMagic, 8));
}

FeatureMatrix ParseFeatures(std::span<const std::uint8_t> bytes) {
  if (!IsFeatureFile(bytes))
    throw Error(ErrorCode::kUnsupportedFormat, "not a feature matrix file");
  if (bytes.size() < 16)
    throw Error(ErrorCode::kCorruptStream, "truncated feature header");
  const std::uint32_t rows = internal::LoadLe32(bytes.data() + 8);
  const std::uint32_t cols = internal::LoadLe32(bytes.data() + 12);
  const std::uint64_t values = std::uint64_t{rows} * cols;
  if (bytes.size() != 16 + values * 4)
    throw Error(ErrorCode::kCorruptStream,
                "feature payload size does not match its header");
  FeatureMatrix feat(rows, cols);
  const std::uint8_t *p = bytes.data() + 16;
  auto data = feat.data();
  for (std::uint64_t i = 0; i < values; ++i)
    data[i] = std::bit_cast<float>(internal::LoadLe32(p + 4 * i));
  return feat;
}

}  // namespace s2t
