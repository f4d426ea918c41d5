// src/cli/prep.cc

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

#include <cmath>
#include <filesystem>
#include <map>
#include <set>
#include <sstream>

#include "common/text.h"
#include "s2t/audio.h"
#include "s2t/cli.h"
#include "s2t/data_config.h"
#include "s2t/error.h"
#include "s2t/rng.h"

namespace s2t {
namespace {

namespace fs = std::filesystem;

constexpr int kTargetRate = 16000;

struct TranscriptRow {
  std::string id;
  std::string audio;
  std::string tgt_text;
  std::optional<std::string> src_text;
  std::optional<std::string> speaker;
};

std::vector<TranscriptRow> ReadTranscripts(const std::string &path) {
  const auto bytes = ReadFileBytes(path);
  const std::string text(bytes.begin(), bytes.end());
  auto lines = internal::SplitOn(text, '\n');
  if (lines.empty() || lines[0].empty())
    throw Error(ErrorCode::kMalformedRow, path + ": missing header");
  for (auto &l : lines)
    if (!l.empty() && l.back() == '\r') l.pop_back();

  const auto header = internal::SplitOn(lines[0], '\t');
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < header.size(); ++i) col[header[i]] = i;
  for (const char *need : {"id", "audio", "tgt_text"})
    if (!col.count(need))
      throw Error(ErrorCode::kMalformedRow,
                  path + ": header lacks column '" + need + "'");

  std::vector<TranscriptRow> rows;
  std::set<std::string> seen;
  for (std::size_t ln = 1; ln < lines.size(); ++ln) {
    if (lines[ln].empty()) continue;
    const auto cells = internal::SplitOn(lines[ln], '\t');
    if (cells.size() != header.size())
      throw Error(ErrorCode::kMalformedRow, path + ":" + std::to_string(ln + 1) + ": " +
                                                std::to_string(cells.size()) +
                                                " columns under a " +
                                                std::to_string(header.size()) +
                                                "-column header");
    TranscriptRow r;
    r.id = cells[col["id"]];
    r.audio = cells[col["audio"]];
    r.tgt_text = cells[col["tgt_text"]];
    if (col.count("src_text")) r.src_text = cells[col["src_text"]];
    if (col.count("speaker")) r.speaker = cells[col["speaker"]];
    if (r.id.empty())
      throw Error(ErrorCode::kMalformedRow, path + ":" + std::to_string(ln + 1) + ": empty id");
    if (!seen.insert(r.id).second)
      throw Error(ErrorCode::kMalformedRow, path + ": duplicate id '" + r.id + "'");
    rows.push_back(std::move(r));
  }
  return rows;
}

std::uint64_t Fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

struct Item {
  std::size_t row;
  double factor;
  std::string id;
  std::vector<std::uint8_t> feats;
  std::uint64_t n_frames = 0;
  std::string error;
};

void Extract(const PrepJob &job, const TranscriptRow &row, Item &item) {
  const std::string path = (fs::path(job.audio_dir) / row.audio).string();
  Waveform w = DecodeAudio(ReadFileBytes(path), FormatFromExtension(row.audio));
  if (w.sample_rate != kTargetRate) {
    const double step = static_cast<double>(w.sample_rate) / kTargetRate;
    const auto len = static_cast<std::size_t>(
        std::llround(static_cast<double>(w.samples.size()) / step));
    w.samples = ResampleByStep(w.samples, step, len);
    w.sample_rate = kTargetRate;
  }
  if (item.factor != 1.0) w = SpeedPerturb(w, item.factor);
  FbankConfig cfg = job.fbank;
  cfg.dither_seed = SplitMix64(job.seed ^ Fnv1a(item.id));
  const FeatureMatrix feat = LogMelFbank(w, cfg);
  item.n_frames = feat.num_frames();
  item.feats = SerializeFeatures(feat);
}

}  // namespace

std::string SpeedSuffix(double factor) {
  if (factor == 1.0) return "";
  std::ostringstream s;
  s << "-sp" << factor;
  return s.str();
}

PrepResult RunPrep(const PrepJob &job) {
  job.fbank.Validate();
  if (job.speeds.empty())
    throw Error(ErrorCode::kInvalidArgument, "at least one speed factor is required");
  std::set<std::string> suffixes;
  for (double f : job.speeds) {
    if (!(f >= kMinSpeedFactor && f <= kMaxSpeedFactor))
      throw Error(ErrorCode::kInvalidArgument, "speed factor out of range [0.5, 2]");
    if (!suffixes.insert(SpeedSuffix(f)).second)
      throw Error(ErrorCode::kInvalidArgument, "repeated speed factor");
  }

  const auto transcripts = ReadTranscripts(job.transcripts);
  std::vector<Item> items;
  std::set<std::string> ids;
  for (std::size_t r = 0; r < transcripts.size(); ++r) {
    for (double f : job.speeds) {
      Item it{r, f, transcripts[r].id + SpeedSuffix(f), {}, 0, {}};
      if (!ids.insert(it.id).second)
        throw Error(ErrorCode::kMalformedRow, "id '" + it.id + "' collides after speed suffixing");
      items.push_back(std::move(it));
    }
  }

  const auto count = static_cast<std::int64_t>(items.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      Extract(job, transcripts[items[i].row], items[i]);
    } catch (const std::exception &e) {
      items[i].error = e.what();
    }
  }

  PrepResult result;
  std::vector<ManifestRow> rows;
  std::map<std::string, const Item *> by_id;
  for (const Item &it : items) {
    if (!it.error.empty()) {
      result.failures.push_back({it.id, it.error});
      continue;
    }
    const TranscriptRow &t = transcripts[it.row];
    ManifestRow m;
    m.id = it.id;
    m.n_frames = it.n_frames;
    m.tgt_text = t.tgt_text;
    m.src_text = t.src_text;
    m.speaker = t.speaker;
    rows.push_back(std::move(m));
    by_id[it.id] = &it;
  }
  auto filtered = FilterByFrames(std::move(rows), job.max_frames);
  result.dropped = filtered.dropped;
  result.rows = std::move(filtered.kept);

  fs::create_directories(job.out_dir);
  const fs::path out(job.out_dir);
  if (job.pack) {
    ZipWriter zip;
    for (auto &row : result.rows) {
      const ZipEntry &e = zip.Add(row.id + ".fbank", by_id.at(row.id)->feats);
      row.audio = Locator{"features.zip", e.offset, e.length}.ToString();
    }
    WriteFileBytes((out / "features.zip").string(), zip.Finish());
  } else {
    fs::create_directories(out / "feats");
    for (auto &row : result.rows) {
      row.audio = "feats/" + row.id + ".fbank";
      WriteFileBytes((out / row.audio).string(), by_id.at(row.id)->feats);
    }
  }
  SaveManifest((out / "manifest.tsv").string(), result.rows);

  DataConfig cfg;
  cfg.audio_root = ".";
  cfg.input_feat_per_channel = job.fbank.num_mel_bins;
  cfg.sample_rate = kTargetRate;
  cfg.transforms = {{"_train", {"utterance_cmvn", "specaugment"}},
                    {"*", {"utterance_cmvn"}}};
  cfg.transform_params["specaugment"] = {{"policy", "LB"}};
  SaveDataConfig((out / "config.yaml").string(), cfg);

  std::ostringstream report;
  report << "rows=" << result.rows.size() << "\n"
         << "dropped=" << result.dropped << "\n"
         << "failed=" << result.failures.size() << "\n";
  for (const auto &f : result.failures) report << f.id << "\t" << f.message << "\n";
  WriteFileText((out / "prep_report.txt").string(), report.str());
  return result;
}

}  // namespace s2t
