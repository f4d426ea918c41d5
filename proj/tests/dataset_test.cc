// tests/dataset_test.cc

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
#include <cstdlib>
#include <map>

#include "doctest.h"
#include "s2t/data_config.h"
#include "s2t/dataset.h"
#include "s2t/error.h"
#include "test_util.h"

using namespace s2t;
using s2t::testing::CodeOf;
using s2t::testing::TempDir;

namespace {

std::string RandomField(Rng &rng, bool allow_empty) {
  const std::size_t len = rng.UniformInt(allow_empty ? 0 : 1, 12);
  std::string s;
  for (std::size_t i = 0; i < len; ++i) {
    switch (rng.UniformInt(0, 5)) {
      case 0: s += "\xc3\xa9"; break;         // é
      case 1: s += "\xe4\xb8\xad"; break;     // 中
      default: s.push_back(static_cast<char>(rng.UniformInt(0x20, 0x7e)));
    }
  }
  return s;
}

std::vector<std::uint8_t> RandomBlob(Rng &rng, std::size_t max_len) {
  std::vector<std::uint8_t> b(rng.UniformInt(0, static_cast<std::int64_t>(max_len)));
  for (auto &x : b) x = static_cast<std::uint8_t>(rng.UniformInt(0, 255));
  return b;
}

ManifestRow Row(const std::string &id, std::uint64_t n) {
  return {id, id + ".wav", n, "text " + id, std::nullopt, std::nullopt};
}

}  // namespace

TEST_CASE("manifest: round trip of three rows") {
  std::vector<ManifestRow> rows{
      {"a", "clips/a.wav", 98, "hello world", std::string("hallo welt"), std::string("spk1")},
      {"b", "feats.zip:120:400", 3000, "", std::string(""), std::nullopt},
      {"c", "c.flac", 1, "x", std::nullopt, std::string("spk2")}};
  const std::string tsv = WriteManifest(rows);
  CHECK(tsv.substr(0, tsv.find('\n')) == "id\taudio\tn_frames\ttgt_text\tsrc_text\tspeaker");
  const auto back = ReadManifest(tsv);
  REQUIRE(back.size() == 3);
  CHECK(back[0] == rows[0]);
  CHECK(back[2] == rows[2]);
  CHECK(back[1].id == "b");
  CHECK(back[1].tgt_text.empty());
  CHECK(WriteManifest(back) == tsv);
}

TEST_CASE("manifest: minimal header when no optional columns are used") {
  const std::vector<ManifestRow> rows{Row("u1", 5)};
  const std::string tsv = WriteManifest(rows);
  CHECK(tsv == "id\taudio\tn_frames\ttgt_text\nu1\tu1.wav\t5\ttext u1\n");
  CHECK(ReadManifest(tsv) == rows);
}

TEST_CASE("manifest: property round trip over random printable rows") {
  Rng rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<ManifestRow> rows;
    const bool with_src = rng.UniformInt(0, 1), with_spk = rng.UniformInt(0, 1);
    const std::size_t n = rng.UniformInt(0, 8);
    for (std::size_t i = 0; i < n; ++i) {
      ManifestRow r;
      r.id = "id" + std::to_string(i) + RandomField(rng, true);
      r.audio = RandomField(rng, false);
      r.n_frames = rng.UniformInt(1, 100000);
      r.tgt_text = RandomField(rng, true);
      // Empty optional cells read back as absent.
      if (with_src) r.src_text = RandomField(rng, false);
      if (with_spk) r.speaker = RandomField(rng, false);
      rows.push_back(r);
    }
    CHECK(ReadManifest(WriteManifest(rows)) == rows);
  }
}

TEST_CASE("manifest: errors") {
  ManifestRow bad = Row("a", 3);
  bad.tgt_text = "tab\there";
  CHECK(CodeOf([&] { WriteManifest(std::vector<ManifestRow>{bad}); }) ==
        ErrorCode::kIllegalCharacter);
  bad.tgt_text = "new\nline";
  CHECK(CodeOf([&] { WriteManifest(std::vector<ManifestRow>{bad}); }) ==
        ErrorCode::kIllegalCharacter);
  CHECK(CodeOf([] { ReadManifest("id\taudio\tn_frames\ttgt_text\na\tb\t3\tx\ty\n"); }) ==
        ErrorCode::kMalformedRow);
  CHECK(CodeOf([] { ReadManifest("id\taudio\tn_frames\ttgt_text\na\tb\t3\n"); }) ==
        ErrorCode::kMalformedRow);
  CHECK(CodeOf([] { ReadManifest("id\taudio\tn_frames\ttgt_text\na\tb\t0\tx\n"); }) ==
        ErrorCode::kMalformedRow);
  CHECK(CodeOf([] { ReadManifest("id\taudio\tn_frames\ttgt_text\na\tb\tten\tx\n"); }) ==
        ErrorCode::kMalformedRow);
  CHECK(CodeOf([] {
          ReadManifest("id\taudio\tn_frames\ttgt_text\na\tb\t1\tx\na\tc\t2\ty\n");
        }) == ErrorCode::kMalformedRow);
  CHECK(CodeOf([] { ReadManifest(""); }) == ErrorCode::kMalformedRow);
  CHECK(CodeOf([] { ReadManifest("id\tpath\tn_frames\ttgt_text\n"); }) ==
        ErrorCode::kMalformedRow);
}

TEST_CASE("filter_by_frames") {
  const auto r = FilterByFrames({Row("a", 2999), Row("b", 3000), Row("c", 3001)});
  REQUIRE(r.kept.size() == 2);
  CHECK(r.kept[0].id == "a");
  CHECK(r.kept[1].id == "b");
  CHECK(r.dropped == 1);
  const auto e = FilterByFrames({});
  CHECK(e.kept.empty());
  CHECK(e.dropped == 0);
  const auto z = FilterByFrames({Row("a", 1), Row("b", 5)}, 0);
  CHECK(z.kept.empty());
  CHECK(z.dropped == 2);
}

TEST_CASE("bucket_batches") {
  SUBCASE("greedy fill") {
    const std::vector<ManifestRow> rows{Row("a", 10), Row("b", 10), Row("c", 10)};
    const auto b = BucketBatches(rows, 20);
    REQUIRE(b.size() == 2);
    CHECK(b[0].size() == 2);
    CHECK(b[1].size() == 1);
  }
  SUBCASE("row at the budget") {
    const std::vector<ManifestRow> rows{Row("a", 20)};
    const auto b = BucketBatches(rows, 20);
    REQUIRE(b.size() == 1);
    CHECK(b[0].size() == 1);
  }
  SUBCASE("oversize row") {
    const std::vector<ManifestRow> rows{Row("a", 21)};
    CHECK(CodeOf([&] { BucketBatches(rows, 20); }) == ErrorCode::kRowExceedsBudget);
  }
  SUBCASE("random rows form a partition within budget") {
    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
      const std::uint64_t budget = rng.UniformInt(50, 4000);
      std::vector<ManifestRow> rows;
      for (int i = 0; i < 100; ++i)
        rows.push_back(Row("r" + std::to_string(i), rng.UniformInt(1, budget)));
      const auto batches = BucketBatches(rows, budget);
      std::map<std::string, int> seen;
      std::uint64_t prev_max = UINT64_MAX;
      for (const auto &batch : batches) {
        REQUIRE_FALSE(batch.empty());
        std::uint64_t total = 0;
        for (const auto &r : batch) {
          total += r.n_frames;
          ++seen[r.id];
          CHECK(r.n_frames <= prev_max);
          prev_max = r.n_frames;
        }
        CHECK(total <= budget);
      }
      CHECK(seen.size() == rows.size());
      for (const auto &[id, c] : seen) CHECK(c == 1);
    }
  }
}

TEST_CASE("zip: payload offsets address raw bytes") {
  Rng rng(8);
  std::vector<NamedBlob> files;
  for (int i = 0; i < 40; ++i)
    files.push_back({"dir/f" + std::to_string(i) + ".bin", RandomBlob(rng, 3000)});
  files.push_back({"empty", {}});
  const PackedArchive a = PackZip(files);
  REQUIRE(a.index.size() == files.size());
  for (const auto &f : files) {
    const ZipEntry *e = a.index.Find(f.name);
    REQUIRE(e != nullptr);
    REQUIRE(e->length == f.data.size());
    CHECK(std::equal(f.data.begin(), f.data.end(), a.bytes.begin() + e->offset));
  }
  const ZipIndex reread = ReadZipIndex(a.bytes);
  CHECK(reread.entries() == a.index.entries());
  CHECK(PackZip(files).bytes == a.bytes);
}

TEST_CASE("zip: duplicate names and corrupt archives") {
  const std::vector<NamedBlob> dup{{"a", {1}}, {"a", {2}}};
  CHECK(CodeOf([&] { PackZip(dup); }) == ErrorCode::kDuplicateName);
  const std::vector<std::uint8_t> junk(100, 0x41);
  CHECK(CodeOf([&] { ReadZipIndex(junk); }) == ErrorCode::kCorruptStream);
}

TEST_CASE("zip: the archive extracts under Python's zipfile") {
  const std::string python = S2T_PYTHON;
  if (std::system((python + " -c 'import zipfile' >/dev/null 2>&1").c_str()) != 0) {
    MESSAGE("python3 unavailable; skipping external unzip check");
    return;
  }
  Rng rng(9);
  std::vector<NamedBlob> files;
  for (int i = 0; i < 10; ++i)
    files.push_back({"u" + std::to_string(i) + ".fbank", RandomBlob(rng, 2000)});
  TempDir dir("zip");
  WriteFileBytes(dir / "a.zip", PackZip(files).bytes);
  for (const auto &f : files) WriteFileBytes(dir / f.name, f.data);
  const std::string script =
      "import sys,zipfile,os\n"
      "d=sys.argv[1]\n"
      "z=zipfile.ZipFile(os.path.join(d,'a.zip'))\n"
      "assert z.testzip() is None\n"
      "for n in z.namelist():\n"
      "  assert z.getinfo(n).compress_type==0\n"
      "  assert z.read(n)==open(os.path.join(d,n),'rb').read(), n\n"
      "assert len(z.namelist())==10\n";
  WriteFileText(dir / "check.py", script);
  CHECK(std::system((python + " " + (dir / "check.py") + " " + dir.path().string()).c_str()) ==
        0);
}

TEST_CASE("locators") {
  const Locator a = ParseLocator("clips/a.wav");
  CHECK(a.path == "clips/a.wav");
  CHECK_FALSE(a.is_range());
  const Locator b = ParseLocator("feats.zip:120:400");
  CHECK(b.path == "feats.zip");
  CHECK(*b.offset == 120);
  CHECK(*b.length == 400);
  CHECK(b.ToString() == "feats.zip:120:400");
  const Locator c = ParseLocator("C:/data/x.zip:0:5");
  CHECK(c.path == "C:/data/x.zip");
  CHECK(CodeOf([] { ParseLocator(""); }) == ErrorCode::kBadLocator);
  CHECK(CodeOf([] { ParseLocator("feats.zip:12:x"); }) == ErrorCode::kBadLocator);
  CHECK(CodeOf([] { ParseLocator("feats.zip:12"); }) == ErrorCode::kBadLocator);
  CHECK(CodeOf([] { ParseLocator(":1:2"); }) == ErrorCode::kBadLocator);
  CHECK(CodeOf([] { ParseLocator("a.zip:99999999999999999999999:1"); }) ==
        ErrorCode::kBadLocator);
}

TEST_CASE("resolve_audio over memory and directory stores") {
  Rng rng(10);
  std::vector<NamedBlob> files{{"x.fbank", RandomBlob(rng, 1000)},
                               {"y.fbank", RandomBlob(rng, 1000)}};
  files[0].data.resize(1000, 3);
  const PackedArchive a = PackZip(files);
  const ZipEntry *e = a.index.Find("x.fbank");

  MemoryStore mem;
  mem.Put("feats.zip", a.bytes);
  mem.Put("clips/a.wav", {1, 2, 3});
  const std::string loc = Locator{"feats.zip", e->offset, e->length}.ToString();
  CHECK(ResolveAudio(loc, mem) == files[0].data);
  CHECK(ResolveAudio("clips/a.wav", mem) == std::vector<std::uint8_t>{1, 2, 3});
  CHECK(CodeOf([&] { ResolveAudio("feats.zip:9999999:4", mem); }) == ErrorCode::kOutOfBounds);
  CHECK(CodeOf([&] { ResolveAudio("missing.wav", mem); }) == ErrorCode::kNotFound);

  TempDir dir("store");
  WriteFileBytes(dir / "feats.zip", a.bytes);
  const DirectoryStore disk(dir.path().string());
  for (const auto &f : files) {
    const ZipEntry *fe = a.index.Find(f.name);
    CHECK(ResolveAudio(Locator{"feats.zip", fe->offset, fe->length}.ToString(), disk) == f.data);
  }
  CHECK(CodeOf([&] { ResolveAudio("feats.zip:9999999:4", disk); }) == ErrorCode::kOutOfBounds);
  CHECK(CodeOf([&] { ResolveAudio("nope.zip:0:1", disk); }) == ErrorCode::kNotFound);
  CHECK(CodeOf([&] { ResolveAudio("nope.wav", disk); }) == ErrorCode::kNotFound);
}

TEST_CASE("data config: minimal round trip") {
  const DataConfig cfg = ReadDataConfig("input_feat_per_channel: 80\n");
  CHECK(cfg.input_feat_per_channel == 80);
  CHECK(cfg.transforms.empty());
  CHECK(ReadDataConfig(WriteDataConfig(cfg)) == cfg);
}

TEST_CASE("data config: full round trip") {
  DataConfig cfg;
  cfg.audio_root = "/data/corpus";
  cfg.input_feat_per_channel = 40;
  cfg.sample_rate = 8000;
  cfg.transforms = {{"_train", {"utterance_cmvn", "specaugment"}}, {"*", {"utterance_cmvn"}}};
  cfg.transform_params["specaugment"] = {{"policy", "LD"}, {"fill", "mean"}};
  cfg.gcmvn = CmvnMoments{{0.1, -2.5, 1.0 / 3.0}, {1.0, 0.25, 2.0 / 7.0}};
  cfg.extra = {{"vocab", "{size: 10000, kind: unigram}"}};
  const DataConfig back = ReadDataConfig(WriteDataConfig(cfg));
  CHECK(back.audio_root == cfg.audio_root);
  CHECK(back.transforms == cfg.transforms);
  CHECK(back.transform_params == cfg.transform_params);
  REQUIRE(back.gcmvn.has_value());
  CHECK(back.gcmvn->mean == cfg.gcmvn->mean);
  CHECK(back.gcmvn->stddev == cfg.gcmvn->stddev);
  CHECK(back.extra.size() == 1);
  CHECK(back.warnings.size() == 1);
  CHECK(WriteDataConfig(back) == WriteDataConfig(ReadDataConfig(WriteDataConfig(back))));
}

TEST_CASE("data config: split patterns") {
  const DataConfig cfg = ReadDataConfig(
      "transforms:\n"
      "  _train: [utterance_cmvn, specaugment]\n"
      "  '*': [utterance_cmvn]\n");
  CHECK(cfg.TransformsForSplit("train") ==
        std::vector<std::string>{"utterance_cmvn", "specaugment"});
  CHECK(cfg.TransformsForSplit("train_clean_100") ==
        std::vector<std::string>{"utterance_cmvn", "specaugment"});
  CHECK(cfg.TransformsForSplit("dev") == std::vector<std::string>{"utterance_cmvn"});
  const DataConfig train_only = ReadDataConfig("transforms:\n  _train: [specaugment]\n");
  CHECK(train_only.TransformsForSplit("test").empty());
}

TEST_CASE("data config: unknown keys are kept with a warning") {
  const DataConfig cfg = ReadDataConfig("input_feat_per_channel: 80\nbpe_tokenizer: {x: 1}\n");
  REQUIRE(cfg.extra.size() == 1);
  CHECK(cfg.extra[0].first == "bpe_tokenizer");
  REQUIRE(cfg.warnings.size() == 1);
  CHECK(WriteDataConfig(cfg).find("bpe_tokenizer") != std::string::npos);
}

TEST_CASE("data config: errors") {
  CHECK(CodeOf([] { ReadDataConfig("input_feat_per_channel: \"eighty\"\n"); }) ==
        ErrorCode::kSchemaViolation);
  CHECK(CodeOf([] { ReadDataConfig("input_feat_per_channel: [1, 2\n"); }) ==
        ErrorCode::kMalformedYaml);
  CHECK(CodeOf([] { ReadDataConfig("- a\n- b\n"); }) == ErrorCode::kSchemaViolation);
  CHECK(CodeOf([] { ReadDataConfig("transforms: 5\n"); }) == ErrorCode::kSchemaViolation);
  CHECK(CodeOf([] { ReadDataConfig("gcmvn: {mean: [1, 2], std: [1]}\n"); }) ==
        ErrorCode::kSchemaViolation);
}
