// src/scorers/bleu.cc

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
#include <map>
#include <vector>

#include "s2t/error.h"
#include "s2t/scorers.h"

namespace s2t {
namespace {

using NgramCounts = std::map<std::vector<std::string>, std::uint64_t>;

NgramCounts CountNgrams(const std::vector<std::string> &tokens, std::size_t n) {
  NgramCounts counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i)
    ++counts[std::vector<std::string>(tokens.begin() + i, tokens.begin() + i + n)];
  return counts;
}

}  // namespace

BleuStats &BleuStats::operator+=(const BleuStats &o) {
  for (int n = 0; n < kBleuOrder; ++n) {
    matches[n] += o.matches[n];
    totals[n] += o.totals[n];
  }
  hyp_len += o.hyp_len;
  ref_len += o.ref_len;
  return *this;
}

BleuStats SentenceBleuStats(std::string_view ref, std::string_view hyp,
                            BleuTokenizer tok) {
  const auto r = TokenizeForBleu(ref, tok);
  const auto h = TokenizeForBleu(hyp, tok);
  BleuStats s;
  s.hyp_len = h.size();
  s.ref_len = r.size();
  for (int n = 1; n <= kBleuOrder; ++n) {
    const auto hc = CountNgrams(h, n);
    const auto rc = CountNgrams(r, n);
    std::uint64_t match = 0;
    for (const auto &[gram, c] : hc) {
      const auto it = rc.find(gram);
      if (it != rc.end()) match += std::min(c, it->second);
    }
    s.matches[n - 1] = match;
    s.totals[n - 1] = h.size() >= static_cast<std::size_t>(n) ? h.size() - n + 1 : 0;
  }
  return s;
}

BleuReport BleuFromStats(const BleuStats &stats, BleuSmoothing smoothing) {
  BleuReport r;
  r.stats = stats;
  r.hyp_len = stats.hyp_len;
  r.ref_len = stats.ref_len;
  if (stats.hyp_len == 0) {
    r.brevity_penalty = 0.0;
  } else if (stats.hyp_len < stats.ref_len) {
    r.brevity_penalty = std::exp(1.0 - static_cast<double>(stats.ref_len) /
                                           static_cast<double>(stats.hyp_len));
  }

  bool zero = false;
  double log_sum = 0.0;
  double smooth = 1.0;
  for (int n = 0; n < kBleuOrder; ++n) {
    if (stats.totals[n] == 0) {
      // No n-grams of this order at all: the geometric mean collapses.
      zero = true;
      break;
    }
    double p;
    if (stats.matches[n] == 0) {
      if (smoothing == BleuSmoothing::kExpFloor) {
        smooth *= 2.0;
        p = 1.0 / (smooth * static_cast<double>(stats.totals[n]));
      } else {
        p = 0.0;
      }
    } else {
      p = static_cast<double>(stats.matches[n]) / static_cast<double>(stats.totals[n]);
    }
    r.precisions[n] = p;
    if (p == 0.0)
      zero = true;
    else
      log_sum += std::log(p);
  }
  r.bleu = zero ? 0.0 : 100.0 * r.brevity_penalty * std::exp(log_sum / kBleuOrder);
  return r;
}

BleuReport Bleu(std::span<const std::string> refs, std::span<const std::string> hyps,
                const BleuOptions &opts) {
  if (refs.size() != hyps.size())
    throw Error(ErrorCode::kLengthMismatch, std::to_string(refs.size()) +
                                                " references vs " +
                                                std::to_string(hyps.size()) + " hypotheses");
  std::vector<BleuStats> per(refs.size());
  const auto count = static_cast<std::int64_t>(refs.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t k = 0; k < count; ++k)
    per[k] = SentenceBleuStats(refs[k], hyps[k], opts.tokenizer);
  BleuStats total;
  for (const auto &s : per) total += s;
  if (total.hyp_len == 0)
    throw Error(ErrorCode::kEmptyCorpus, "no hypothesis tokens in corpus");
  return BleuFromStats(total, opts.smoothing);
}

}  // namespace s2t
