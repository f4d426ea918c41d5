// tests/cli_test.cc

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
#include <filesystem>

#include "corpus_util.h"
#include "doctest.h"
#include "s2t/cli.h"
#include "s2t/data_config.h"
#include "s2t/dataset.h"
#include "s2t/simul.h"

using namespace s2t;
using namespace s2t::testing;
namespace fs = std::filesystem;

TEST_CASE("prep: three one-second sines give 98 frames each") {
  TempDir dir("prep3");
  WriteSyntheticCorpus(dir, {1.0, 1.0, 1.0});
  const CliRun r = Cli(PrepArgs(dir, "out"));
  CHECK(r.code == kExitOk);
  const auto rows = LoadManifest(dir / "out/manifest.tsv");
  REQUIRE(rows.size() == 3);
  for (const auto &row : rows) {
    CHECK(row.n_frames == 98);
    CHECK(fs::exists(fs::path(dir / "out") / row.audio));
  }
  const DataConfig cfg = LoadDataConfig(dir / "out/config.yaml");
  CHECK(cfg.input_feat_per_channel == 80);
  CHECK(cfg.TransformsForSplit("train") ==
        std::vector<std::string>{"utterance_cmvn", "specaugment"});
  CHECK(cfg.TransformsForSplit("dev") == std::vector<std::string>{"utterance_cmvn"});
  CHECK(fs::exists(dir / "out/prep_report.txt"));
}

TEST_CASE("prep: speed perturbation expands every row") {
  TempDir dir("prepsp");
  WriteSyntheticCorpus(dir, {1.0, 1.0, 1.0});
  auto args = PrepArgs(dir, "out");
  args.insert(args.end(), {"--speed", "0.9,1.0,1.1"});
  const CliRun r = Cli(args);
  CHECK(r.code == kExitOk);
  const auto rows = LoadManifest(dir / "out/manifest.tsv");
  REQUIRE(rows.size() == 9);
  std::vector<std::string> ids;
  for (const auto &row : rows) ids.push_back(row.id);
  CHECK(std::count(ids.begin(), ids.end(), "utt0-sp0.9") == 1);
  CHECK(std::count(ids.begin(), ids.end(), "utt0") == 1);
  CHECK(std::count(ids.begin(), ids.end(), "utt2-sp1.1") == 1);
  for (const auto &row : rows) {
    if (row.id.find("-sp0.9") != std::string::npos) CHECK(row.n_frames == 109);
    else if (row.id.find("-sp1.1") != std::string::npos) CHECK(row.n_frames == 89);
    else CHECK(row.n_frames == 98);
  }
  CHECK(SpeedSuffix(1.0).empty());
  CHECK(SpeedSuffix(0.9) == "-sp0.9");
}

TEST_CASE("prep: one corrupt file is reported and the job succeeds") {
  TempDir dir("prepbad");
  WriteSyntheticCorpus(dir, {1.0, 1.0, 1.0});
  WriteFileText((dir.path() / "audio" / "utt1.wav").string(), "RIFF but not really a wave");
  const CliRun r = Cli(PrepArgs(dir, "out"));
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("failed=1") != std::string::npos);
  CHECK(r.err.find("utt1") != std::string::npos);
  CHECK(LoadManifest(dir / "out/manifest.tsv").size() == 2);
  CHECK(ReadText(dir / "out/prep_report.txt").find("utt1") != std::string::npos);

  // Every file broken: the job itself fails.
  for (int i = 0; i < 3; ++i)
    WriteFileText((dir.path() / "audio" / ("utt" + std::to_string(i) + ".wav")).string(), "x");
  CHECK(Cli(PrepArgs(dir, "out2")).code == kExitPartial);
}

TEST_CASE("prep: frame filter keeps 3000 and drops 3001") {
  TempDir dir("prepfilter");
  WriteSyntheticCorpus(dir, {SecondsForFrames(2999), SecondsForFrames(3000),
                             SecondsForFrames(3001)});
  const CliRun r = Cli(PrepArgs(dir, "out"));
  CHECK(r.code == kExitOk);
  const auto rows = LoadManifest(dir / "out/manifest.tsv");
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].n_frames == 2999);
  CHECK(rows[1].n_frames == 3000);
  CHECK(r.out.find("dropped=1") != std::string::npos);
}

TEST_CASE("prep: reruns are byte-identical, loose and packed") {
  TempDir dir("prepidem");
  WriteSyntheticCorpus(dir, {0.7, 1.2, 0.4});
  for (bool pack : {false, true}) {
    auto a = PrepArgs(dir, "a"), b = PrepArgs(dir, "b");
    if (pack) {
      a.push_back("--pack");
      b.push_back("--pack");
    }
    a.insert(a.end(), {"--dither", "1.0", "--seed", "7"});
    b.insert(b.end(), {"--dither", "1.0", "--seed", "7"});
    REQUIRE(Cli(a).code == kExitOk);
    REQUIRE(Cli(b).code == kExitOk);
    for (const auto &entry : fs::recursive_directory_iterator(dir / "a")) {
      if (!entry.is_regular_file()) continue;
      const fs::path rel = fs::relative(entry.path(), dir / "a");
      CHECK(ReadFileBytes(entry.path().string()) == ReadFileBytes((fs::path(dir / "b") / rel).string()));
    }
    CHECK(fs::exists(dir / "a/features.zip") == pack);
    fs::remove_all(dir / "a");
    fs::remove_all(dir / "b");
  }
}

TEST_CASE("pack and inspect: packed and loose give the same statistics") {
  TempDir dir("inspect");
  WriteSyntheticCorpus(dir, {1.0, 0.6});
  REQUIRE(Cli(PrepArgs(dir, "loose")).code == kExitOk);
  const CliRun pk = Cli({"pack", "--manifest", dir / "loose/manifest.tsv", "--out", dir / "packed"});
  REQUIRE(pk.code == kExitOk);
  CHECK(pk.out.find("entries=2") != std::string::npos);
  const auto packed_rows = LoadManifest(dir / "packed/manifest.tsv");
  CHECK(ParseLocator(packed_rows[0].audio).is_range());

  for (const char *id : {"utt0", "utt1"}) {
    const CliRun a = Cli({"inspect", "--manifest", dir / "loose/manifest.tsv", "--id", id});
    const CliRun b = Cli({"inspect", "--manifest", dir / "packed/manifest.tsv", "--id", id});
    REQUIRE(a.code == kExitOk);
    REQUIRE(b.code == kExitOk);
    auto stats = [](const std::string &s) { return s.substr(s.find("n_frames=")); };
    CHECK(stats(a.out) == stats(b.out));
    CHECK(a.out.find("pipeline=utterance_cmvn") != std::string::npos);
  }
  const CliRun one = Cli({"inspect", "--manifest", dir / "loose/manifest.tsv", "--id", "utt0"});
  CHECK(one.out.find("n_frames=98\n") != std::string::npos);
  CHECK(one.out.find("frames=98\ndim=80\n") != std::string::npos);
  CHECK(one.out.find("feat_mean=0.000000") != std::string::npos);

  const CliRun unknown =
      Cli({"inspect", "--manifest", dir / "loose/manifest.tsv", "--id", "nope"});
  CHECK(unknown.code == kExitUsage);
}

TEST_CASE("gcmvn: statistics land in the config") {
  TempDir dir("gcmvn");
  WriteSyntheticCorpus(dir, {0.5, 0.5});
  REQUIRE(Cli(PrepArgs(dir, "out")).code == kExitOk);
  const CliRun r = Cli({"gcmvn", "--manifest", dir / "out/manifest.tsv", "--out", dir / "g.yaml"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("frames=96\n") != std::string::npos);
  const DataConfig cfg = LoadDataConfig(dir / "g.yaml");
  REQUIRE(cfg.gcmvn.has_value());
  CHECK(cfg.gcmvn->mean.size() == 80);
  CHECK(cfg.TransformsForSplit("dev") == std::vector<std::string>{"utterance_cmvn"});
}

TEST_CASE("score: metrics and exit codes") {
  TempDir dir("score");
  WriteFileText(dir / "r.txt", "the cat sat on the mat\nhello world\n");
  WriteFileText(dir / "h.txt", "the cat sat on the mat\nhello world\n");
  WriteFileText(dir / "short.txt", "only one line\n");
  const CliRun b = Cli({"score", "--refs", dir / "r.txt", "--hyps", dir / "h.txt", "--bleu"});
  CHECK(b.code == kExitOk);
  CHECK(b.out.find("bleu=100.000") != std::string::npos);
  const CliRun w = Cli({"score", "--refs", dir / "r.txt", "--hyps", dir / "h.txt", "--wer"});
  CHECK(w.out == "wer=0.000\n");
  const CliRun c = Cli({"score", "--refs", dir / "r.txt", "--hyps", dir / "h.txt", "--chrf"});
  CHECK(c.out == "chrf=100.000\n");
  const CliRun def = Cli({"score", "--refs", dir / "r.txt", "--hyps", dir / "h.txt"});
  CHECK(def.out.substr(0, 12) == "bleu=100.000");
  const CliRun mismatch = Cli({"score", "--refs", dir / "r.txt", "--hyps", dir / "short.txt"});
  CHECK(mismatch.code == kExitUsage);
  CHECK_FALSE(mismatch.err.empty());
  CHECK(Cli({"score", "--refs", dir / "missing.txt", "--hyps", dir / "h.txt"}).code == kExitUsage);
}

TEST_CASE("usage errors") {
  CHECK(Cli({}).code == kExitUsage);
  CHECK(Cli({"frobnicate"}).code == kExitUsage);
  CHECK(Cli({"score", "--refs", "x"}).code == kExitUsage);
  CHECK(Cli({"--help"}).code == kExitOk);
}

TEST_CASE("simul: wait-3 echo and offline runs") {
  TempDir dir("simul");
  WriteSyntheticCorpus(dir, {0.5, 0.5, 0.5, 0.5}, 8);
  REQUIRE(Cli(PrepArgs(dir, "out")).code == kExitOk);
  const std::string manifest = dir / "out/manifest.tsv";

  const CliRun w3 = Cli({"simul", "--manifest", manifest, "--agent", "waitk:3", "--traces",
                         dir / "t.jsonl"});
  CHECK(w3.code == kExitOk);
  CHECK(w3.out.find("bleu=100.000\n") != std::string::npos);
  CHECK(w3.out.find("al=3.000\n") != std::string::npos);
  CHECK(w3.out.find("dal=3.000\n") != std::string::npos);
  CHECK(w3.out.find("regime=low\n") != std::string::npos);
  CHECK(w3.out.find("unit=word\n") != std::string::npos);

  const CliRun off = Cli({"simul", "--manifest", manifest, "--agent", "waitk:100", "--traces",
                          dir / "off.jsonl"});
  CHECK(off.out.find("al=8.000\n") != std::string::npos);
  CHECK(off.out.find("regime=high\n") != std::string::npos);

  const CliRun replay =
      Cli({"simul", "--manifest", manifest, "--agent",
           std::string("exec:") + S2T_REPLAY_AGENT + " " + (dir / "t.jsonl"), "--traces",
           dir / "t2.jsonl"});
  CHECK(replay.code == kExitOk);
  CHECK(replay.out == w3.out);
  CHECK(ReadText(dir / "t.jsonl") == ReadText(dir / "t2.jsonl"));

  const CliRun ms = Cli({"simul", "--manifest", manifest, "--agent", "waitk:1", "--unit", "ms",
                         "--traces", dir / "ms.jsonl"});
  CHECK(ms.code == kExitOk);
  CHECK(ms.out.find("unit=ms\n") != std::string::npos);

  const CliRun broken = Cli({"simul", "--manifest", manifest, "--agent",
                             "exec:/nonexistent/agent 2>/dev/null", "--traces", dir / "b.jsonl"});
  CHECK(broken.code != kExitOk);
  CHECK(Cli({"simul", "--manifest", manifest, "--agent", "bogus"}).code == kExitUsage);
}
