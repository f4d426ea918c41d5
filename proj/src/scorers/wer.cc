// src/scorers/wer.cc

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
#include <vector>

#include "common/text.h"
#include "s2t/error.h"
#include "s2t/scorers.h"

namespace s2t {
namespace {

void CheckLengths(std::size_t refs, std::size_t hyps) {
  if (refs != hyps)
    throw Error(ErrorCode::kLengthMismatch, std::to_string(refs) + " references vs " +
                                                std::to_string(hyps) + " hypotheses");
}

EditCounts AlignPair(const std::string &ref, const std::string &hyp,
                     std::size_t index, std::uint64_t *ref_words) {
  const auto r = internal::SplitWhitespace(ref);
  if (r.empty())
    throw Error(ErrorCode::kEmptyReference,
                "reference " + std::to_string(index) + " has no words");
  *ref_words = r.size();
  return AlignTokens(r, internal::SplitWhitespace(hyp));
}

WerReport Finish(const EditCounts &e, std::uint64_t ref_words) {
  WerReport w;
  w.substitutions = e.substitutions;
  w.insertions = e.insertions;
  w.deletions = e.deletions;
  w.ref_words = ref_words;
  w.wer = ref_words ? static_cast<double>(e.total()) / static_cast<double>(ref_words) : 0.0;
  return w;
}

}  // namespace

EditCounts AlignTokens(std::span<const std::string> ref,
                       std::span<const std::string> hyp) {
  const std::size_t n = ref.size(), m = hyp.size();
  std::vector<std::uint32_t> cost((n + 1) * (m + 1));
  auto at = [&](std::size_t i, std::size_t j) -> std::uint32_t & {
    return cost[i * (m + 1) + j];
  };
  for (std::size_t i = 0; i <= n; ++i) at(i, 0) = static_cast<std::uint32_t>(i);
  for (std::size_t j = 0; j <= m; ++j) at(0, j) = static_cast<std::uint32_t>(j);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const std::uint32_t diag = at(i - 1, j - 1) + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      const std::uint32_t ins = at(i, j - 1) + 1;
      const std::uint32_t del = at(i - 1, j) + 1;
      at(i, j) = std::min({diag, ins, del});
    }
  }

  EditCounts e;
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0) {
      const bool same = ref[i - 1] == hyp[j - 1];
      if (at(i, j) == at(i - 1, j - 1) + (same ? 0 : 1)) {
        if (!same) ++e.substitutions;
        --i;
        --j;
        continue;
      }
    }
    if (j > 0 && at(i, j) == at(i, j - 1) + 1) {
      ++e.insertions;
      --j;
    } else {
      ++e.deletions;
      --i;
    }
  }
  return e;
}

WerReport WerSerial(std::span<const std::string> refs,
                    std::span<const std::string> hyps) {
  CheckLengths(refs.size(), hyps.size());
  EditCounts total;
  std::uint64_t words = 0;
  for (std::size_t k = 0; k < refs.size(); ++k) {
    std::uint64_t w = 0;
    total += AlignPair(refs[k], hyps[k], k, &w);
    words += w;
  }
  return Finish(total, words);
}

WerReport Wer(std::span<const std::string> refs, std::span<const std::string> hyps) {
  CheckLengths(refs.size(), hyps.size());
  // Empty references are rejected up front so no exception escapes the
  // parallel region.
  for (std::size_t k = 0; k < refs.size(); ++k)
    if (internal::SplitWhitespace(refs[k]).empty())
      throw Error(ErrorCode::kEmptyReference,
                  "reference " + std::to_string(k) + " has no words");
  std::vector<EditCounts> per(refs.size());
  std::vector<std::uint64_t> words(refs.size());
  const auto count = static_cast<std::int64_t>(refs.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t k = 0; k < count; ++k)
    per[k] = AlignPair(refs[k], hyps[k], static_cast<std::size_t>(k), &words[k]);
  EditCounts total;
  std::uint64_t ref_words = 0;
  for (std::size_t k = 0; k < per.size(); ++k) {
    total += per[k];
    ref_words += words[k];
  }
  return Finish(total, ref_words);
}

}  // namespace s2t
