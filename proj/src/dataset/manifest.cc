// src/dataset/manifest.cc

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
#include <charconv>
#include <set>

#include "common/text.h"
#include "s2t/dataset.h"
#include "s2t/error.h"

namespace s2t {
namespace {

constexpr const char *kRequired[] = {"id", "audio", "n_frames", "tgt_text"};

void CheckField(std::string_view field, const char *column, std::size_t row) {
  if (field.find_first_of("\t\n\r") != std::string_view::npos)
    throw Error(ErrorCode::kIllegalCharacter,
                std::string("tab or newline in column '") + column +
                    "' of row " + std::to_string(row));
}

void CheckRow(const ManifestRow &r, std::size_t index) {
  if (r.id.empty())
    throw Error(ErrorCode::kMalformedRow,
                "empty id in row " + std::to_string(index));
  if (r.n_frames < 1)
    throw Error(ErrorCode::kMalformedRow,
                "n_frames must be >= 1 (row '" + r.id + "')");
}

}  // namespace

std::string WriteManifest(std::span<const ManifestRow> rows) {
  const bool with_src = std::any_of(rows.begin(), rows.end(),
                                    [](const auto &r) { return r.src_text.has_value(); });
  const bool with_spk = std::any_of(rows.begin(), rows.end(),
                                    [](const auto &r) { return r.speaker.has_value(); });
  std::string out = "id\taudio\tn_frames\ttgt_text";
  if (with_src) out += "\tsrc_text";
  if (with_spk) out += "\tspeaker";
  out += '\n';
  std::set<std::string_view> seen;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const ManifestRow &r = rows[i];
    CheckRow(r, i);
    if (!seen.insert(r.id).second)
      throw Error(ErrorCode::kMalformedRow, "duplicate id '" + r.id + "'");
    CheckField(r.id, "id", i);
    CheckField(r.audio, "audio", i);
    CheckField(r.tgt_text, "tgt_text", i);
    out += r.id;
    out += '\t';
    out += r.audio;
    out += '\t';
    out += std::to_string(r.n_frames);
    out += '\t';
    out += r.tgt_text;
    if (with_src) {
      const std::string &s = r.src_text ? *r.src_text : std::string();
      CheckField(s, "src_text", i);
      out += '\t';
      out += s;
    }
    if (with_spk) {
      const std::string &s = r.speaker ? *r.speaker : std::string();
      CheckField(s, "speaker", i);
      out += '\t';
      out += s;
    }
    out += '\n';
  }
  return out;
}

std::vector<ManifestRow> ReadManifest(std::string_view tsv) {
  auto lines = internal::SplitOn(tsv, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  for (auto &l : lines)
    if (!l.empty() && l.back() == '\r') l.pop_back();
  if (lines.empty())
    throw Error(ErrorCode::kMalformedRow, "manifest has no header row");

  const auto header = internal::SplitOn(lines[0], '\t');
  if (header.size() < 4 || !std::equal(std::begin(kRequired), std::end(kRequired),
                                       header.begin()))
    throw Error(ErrorCode::kMalformedRow,
                "manifest header must start with id, audio, n_frames, tgt_text");
  int src_col = -1, spk_col = -1;
  for (std::size_t c = 4; c < header.size(); ++c) {
    if (header[c] == "src_text" && src_col < 0) src_col = static_cast<int>(c);
    else if (header[c] == "speaker" && spk_col < 0) spk_col = static_cast<int>(c);
    else
      throw Error(ErrorCode::kMalformedRow,
                  "unknown or repeated manifest column '" + header[c] + "'");
  }

  std::vector<ManifestRow> rows;
  rows.reserve(lines.size() - 1);
  std::set<std::string> seen;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto cells = internal::SplitOn(lines[i], '\t');
    if (cells.size() != header.size())
      throw Error(ErrorCode::kMalformedRow,
                  "line " + std::to_string(i + 1) + " has " +
                      std::to_string(cells.size()) + " columns, header has " +
                      std::to_string(header.size()));
    ManifestRow r;
    r.id = cells[0];
    r.audio = cells[1];
    const std::string &nf = cells[2];
    const auto [ptr, ec] = std::from_chars(nf.data(), nf.data() + nf.size(), r.n_frames);
    if (ec != std::errc() || ptr != nf.data() + nf.size() || nf.empty())
      throw Error(ErrorCode::kMalformedRow,
                  "bad n_frames '" + nf + "' on line " + std::to_string(i + 1));
    r.tgt_text = cells[3];
    if (src_col >= 0 && !cells[src_col].empty()) r.src_text = cells[src_col];
    if (spk_col >= 0 && !cells[spk_col].empty()) r.speaker = cells[spk_col];
    CheckRow(r, i - 1);
    if (!seen.insert(r.id).second)
      throw Error(ErrorCode::kMalformedRow, "duplicate id '" + r.id + "'");
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<ManifestRow> LoadManifest(const std::string &path) {
  const auto bytes = ReadFileBytes(path);
  return ReadManifest(std::string_view(reinterpret_cast<const char *>(bytes.data()),
                                       bytes.size()));
}

void SaveManifest(const std::string &path, std::span<const ManifestRow> rows) {
  WriteFileText(path, WriteManifest(rows));
}

}  // namespace s2t
