// src/scorers/chrf.cc

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
#include <map>
#include <vector>

#include "common/text.h"
#include "s2t/error.h"
#include "s2t/scorers.h"

namespace s2t {
namespace {

std::u32string StripSpace(std::string_view s) {
  std::u32string out;
  for (char32_t c : internal::DecodeUtf8(s))
    if (!internal::IsUnicodeSpace(c)) out.push_back(c);
  return out;
}

std::map<std::u32string, std::uint64_t> CharNgrams(const std::u32string &s,
                                                   std::size_t n) {
  std::map<std::u32string, std::uint64_t> counts;
  for (std::size_t i = 0; i + n <= s.size(); ++i) ++counts[s.substr(i, n)];
  return counts;
}

}  // namespace

ChrfStats SentenceChrfStats(std::string_view ref, std::string_view hyp, int order) {
  if (order < 1) throw Error(ErrorCode::kInvalidArgument, "chrF order must be >= 1");
  const auto r = StripSpace(ref);
  const auto h = StripSpace(hyp);
  ChrfStats stats(order);
  for (int n = 1; n <= order; ++n) {
    const auto hc = CharNgrams(h, n);
    const auto rc = CharNgrams(r, n);
    std::uint64_t nh = 0, nr = 0, match = 0;
    for (const auto &[g, c] : hc) {
      nh += c;
      const auto it = rc.find(g);
      if (it != rc.end()) match += std::min(c, it->second);
    }
    for (const auto &[g, c] : rc) nr += c;
    stats[n - 1] = {nh, nr, match};
  }
  return stats;
}

double ChrfFromStats(const ChrfStats &stats, double beta) {
  double sum_p = 0.0, sum_r = 0.0;
  int effective = 0;
  bool any_hyp = false;
  for (const auto &[nh, nr, match] : stats) {
    any_hyp = any_hyp || nh > 0;
    if (nr == 0) continue;
    sum_p += nh > 0 ? static_cast<double>(match) / static_cast<double>(nh) : 0.0;
    sum_r += static_cast<double>(match) / static_cast<double>(nr);
    ++effective;
  }
  if (effective == 0) return any_hyp ? 0.0 : 100.0;
  const double p = sum_p / effective;
  const double r = sum_r / effective;
  if (p + r == 0.0) return 0.0;
  const double b2 = beta * beta;
  return 100.0 * (1.0 + b2) * p * r / (b2 * p + r);
}

double Chrf(std::span<const std::string> refs, std::span<const std::string> hyps,
            const ChrfOptions &opts) {
  if (refs.size() != hyps.size())
    throw Error(ErrorCode::kLengthMismatch, std::to_string(refs.size()) +
                                                " references vs " +
                                                std::to_string(hyps.size()) + " hypotheses");
  if (opts.order < 1 || !(opts.beta > 0.0))
    throw Error(ErrorCode::kInvalidArgument, "chrF needs order >= 1 and beta > 0");
  std::vector<ChrfStats> per(refs.size());
  const auto count = static_cast<std::int64_t>(refs.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t k = 0; k < count; ++k)
    per[k] = SentenceChrfStats(refs[k], hyps[k], opts.order);
  ChrfStats total(opts.order);
  for (const auto &s : per)
    for (int n = 0; n < opts.order; ++n)
      for (int c = 0; c < 3; ++c) total[n][c] += s[n][c];
  return ChrfFromStats(total, opts.beta);
}

}  // namespace s2t
