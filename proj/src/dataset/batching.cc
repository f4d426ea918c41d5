// src/dataset/batching.cc

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
#include <numeric>

#include "s2t/dataset.h"
#include "s2t/error.h"

namespace s2t {

FilterResult FilterByFrames(std::vector<ManifestRow> rows,
                            std::uint64_t max_frames) {
  FilterResult result;
  result.kept.reserve(rows.size());
  for (auto &r : rows) {
    if (r.n_frames <= max_frames) result.kept.push_back(std::move(r));
    else ++result.dropped;
  }
  return result;
}

std::vector<std::vector<ManifestRow>> BucketBatches(
    std::span<const ManifestRow> rows, std::uint64_t max_frames_per_batch) {
  for (const auto &r : rows)
    if (r.n_frames > max_frames_per_batch)
      throw Error(ErrorCode::kRowExceedsBudget,
                  "row '" + r.id + "' has " + std::to_string(r.n_frames) +
                      " frames, budget is " + std::to_string(max_frames_per_batch));

  std::vector<std::size_t> order(rows.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return rows[a].n_frames > rows[b].n_frames;
  });

  std::vector<std::vector<ManifestRow>> batches;
  std::uint64_t used = 0;
  for (std::size_t i : order) {
    if (batches.empty() || used + rows[i].n_frames > max_frames_per_batch) {
      batches.emplace_back();
      used = 0;
    }
    batches.back().push_back(rows[i]);
    used += rows[i].n_frames;
  }
  return batches;
}

}  // namespace s2t
