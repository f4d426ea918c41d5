// src/scorers/report.cc

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

#include <cstdio>

#include "s2t/scorers.h"

namespace s2t {
namespace {

std::string FormatValue(const ScoreReport::Value &v) {
  if (const auto *s = std::get_if<std::string>(&v)) return *s;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", std::get<double>(v));
  return buf;
}

}  // namespace

void ScoreReport::Set(const std::string &key, Value v) {
  for (auto &[k, old] : entries_) {
    if (k == key) {
      old = std::move(v);
      return;
    }
  }
  entries_.emplace_back(key, std::move(v));
}

const ScoreReport::Value *ScoreReport::Get(std::string_view key) const {
  for (const auto &[k, v] : entries_)
    if (k == key) return &v;
  return nullptr;
}

std::string ScoreReport::FormatBlock() const {
  std::string out;
  for (const auto &[k, v] : entries_) out += k + "=" + FormatValue(v) + "\n";
  return out;
}

std::string ScoreReport::FormatLine() const {
  std::string out;
  for (const auto &[k, v] : entries_) {
    if (!out.empty()) out.push_back(' ');
    out += k + "=" + FormatValue(v);
  }
  return out;
}

void AddToReport(ScoreReport &r, const WerReport &w) {
  r.Set("wer", w.wer);
}

void AddToReport(ScoreReport &r, const BleuReport &b) {
  r.Set("bleu", b.bleu);
  r.Set("bp", b.brevity_penalty);
  for (int n = 0; n < kBleuOrder; ++n) r.Set("p" + std::to_string(n + 1), b.precisions[n]);
}

}  // namespace s2t
