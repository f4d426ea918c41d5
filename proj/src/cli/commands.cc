// src/cli/commands.cc

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

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>

#include "CLI11.hpp"
#include "s2t/cli.h"
#include "s2t/data_config.h"
#include "s2t/error.h"
#include "s2t/scorers.h"
#include "s2t/simul.h"
#include "s2t/transforms.h"

namespace s2t {
namespace {

namespace fs = std::filesystem;

std::vector<std::string> ReadLines(const std::string &path) {
  const auto bytes = ReadFileBytes(path);
  std::string text(bytes.begin(), bytes.end());
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string::npos) nl = text.size();
    std::string line = text.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    start = nl + 1;
  }
  return lines;
}

// Manifest plus the config next to it (or given explicitly), and a store
// rooted where its locators point.
struct Dataset {
  std::vector<ManifestRow> rows;
  DataConfig config;
  std::unique_ptr<DirectoryStore> store;
};

Dataset OpenDataset(const std::string &manifest, const std::string &config_path) {
  Dataset d;
  d.rows = LoadManifest(manifest);
  const fs::path dir = fs::path(manifest).parent_path();
  std::string cfg = config_path;
  if (cfg.empty() && fs::exists(dir / "config.yaml")) cfg = (dir / "config.yaml").string();
  if (!cfg.empty()) d.config = LoadDataConfig(cfg);
  fs::path root = dir;
  if (!d.config.audio_root.empty()) {
    const fs::path ar(d.config.audio_root);
    root = ar.is_absolute() ? ar : (dir / ar);
  }
  d.store = std::make_unique<DirectoryStore>(root.lexically_normal().string());
  return d;
}

FeatureMatrix LoadFeatures(const ManifestRow &row, const Dataset &d) {
  const auto bytes = ResolveAudio(row.audio, *d.store);
  if (IsFeatureFile(bytes)) return ParseFeatures(bytes);
  const Locator loc = ParseLocator(row.audio);
  FbankConfig cfg;
  cfg.num_mel_bins = d.config.input_feat_per_channel;
  const auto hint = loc.is_range() ? std::nullopt : FormatFromExtension(loc.path);
  return LogMelFbank(DecodeAudio(bytes, hint), cfg);
}

std::string Fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

// ---------------------------------------------------------------------------

struct PrepArgs {
  PrepJob job;
  std::vector<double> speeds{1.0};
  int num_mel_bins = 80;
  double dither = 0.0;
};

int CmdPrep(PrepArgs &a, std::ostream &out, std::ostream &err) {
  a.job.speeds = a.speeds;
  a.job.fbank.num_mel_bins = a.num_mel_bins;
  a.job.fbank.dither = a.dither;
  const PrepResult r = RunPrep(a.job);
  for (const auto &f : r.failures) err << "failed: " << f.id << ": " << f.message << "\n";
  out << "rows=" << r.rows.size() << "\n"
      << "dropped=" << r.dropped << "\n"
      << "failed=" << r.failures.size() << "\n";
  const std::size_t attempted = r.rows.size() + r.dropped + r.failures.size();
  if (!r.failures.empty() && r.failures.size() == attempted) return kExitPartial;
  return kExitOk;
}

struct PackArgs {
  std::string manifest, config, out_dir, archive = "features.zip";
};

int CmdPack(const PackArgs &a, std::ostream &out, std::ostream &) {
  Dataset d = OpenDataset(a.manifest, a.config);
  std::vector<std::vector<std::uint8_t>> blobs(d.rows.size());
  for (std::size_t i = 0; i < d.rows.size(); ++i)
    blobs[i] = ResolveAudio(d.rows[i].audio, *d.store);

  ZipWriter zip;
  for (std::size_t i = 0; i < d.rows.size(); ++i) {
    ManifestRow &row = d.rows[i];
    std::string ext = fs::path(ParseLocator(row.audio).path).extension().string();
    if (ext.empty() || ext == ".zip") ext = IsFeatureFile(blobs[i]) ? ".fbank" : ".wav";
    const ZipEntry &e = zip.Add(row.id + ext, blobs[i]);
    row.audio = Locator{a.archive, e.offset, e.length}.ToString();
  }
  fs::create_directories(a.out_dir);
  const fs::path outp(a.out_dir);
  const auto bytes = zip.Finish();
  WriteFileBytes((outp / a.archive).string(), bytes);
  SaveManifest((outp / "manifest.tsv").string(), d.rows);
  DataConfig cfg = d.config;
  cfg.audio_root = ".";
  SaveDataConfig((outp / "config.yaml").string(), cfg);
  out << "entries=" << d.rows.size() << "\n" << "bytes=" << bytes.size() << "\n";
  return kExitOk;
}

struct ScoreArgs {
  std::string refs, hyps, lang;
  bool wer = false, bleu = false, chrf = false, chr = false;
};

int CmdScore(ScoreArgs a, std::ostream &out, std::ostream &) {
  const auto refs = ReadLines(a.refs);
  const auto hyps = ReadLines(a.hyps);
  if (refs.size() != hyps.size())
    throw Error(ErrorCode::kLengthMismatch, a.refs + " has " + std::to_string(refs.size()) +
                                                " lines, " + a.hyps + " has " +
                                                std::to_string(hyps.size()));
  if (!a.wer && !a.bleu && !a.chrf) a.bleu = true;
  ScoreReport report;
  if (a.wer) AddToReport(report, Wer(refs, hyps));
  if (a.bleu) {
    BleuOptions opts;
    if (!a.lang.empty()) opts.tokenizer = TokenizerForLanguage(a.lang);
    if (a.chr) opts.tokenizer = BleuTokenizer::kChar;
    AddToReport(report, Bleu(refs, hyps, opts));
  }
  if (a.chrf) report.Set("chrf", Chrf(refs, hyps));
  out << report.FormatBlock();
  return kExitOk;
}

struct SimulArgs {
  std::string manifest, config, refs, agent, unit = "word", traces = "traces.jsonl", lang;
  std::size_t max_actions = kDefaultMaxActions;
  double chunk_ms = 250.0;
  bool chr = false;
};

int CmdSimul(const SimulArgs &a, std::ostream &out, std::ostream &err) {
  const DelayUnit unit = ParseDelayUnit(a.unit);
  const AgentFactory factory = MakeAgentFactory(a.agent);
  const auto rows = LoadManifest(a.manifest);
  std::vector<std::string> refs;
  if (!a.refs.empty()) {
    refs = ReadLines(a.refs);
    if (refs.size() != rows.size())
      throw Error(ErrorCode::kLengthMismatch, "manifest has " + std::to_string(rows.size()) +
                                                  " rows, references have " +
                                                  std::to_string(refs.size()));
  } else {
    for (const auto &r : rows) refs.push_back(r.tgt_text);
  }

  std::vector<std::string> ids;
  std::vector<SimulSource> sources;
  for (const auto &r : rows) {
    ids.push_back(r.id);
    if (unit == DelayUnit::kWord)
      sources.push_back(WordSource(r.src_text ? *r.src_text : r.tgt_text));
    else
      sources.push_back(ChunkSource(r.id, r.n_frames, 10.0, a.chunk_ms));
  }

  SimulOptions opts;
  opts.max_actions = a.max_actions;
  if (!a.lang.empty()) opts.bleu.tokenizer = TokenizerForLanguage(a.lang);
  if (a.chr) opts.bleu.tokenizer = BleuTokenizer::kChar;
  const CorpusResult res = EvaluateCorpus(factory, ids, sources, refs, opts);

  std::string dump;
  std::size_t failed = 0;
  for (const auto &s : res.sessions) {
    dump += TraceToJson(s, res.unit) + "\n";
    if (!s.error.empty()) {
      ++failed;
      err << "session " << s.id << ": " << s.error << "\n";
    }
  }
  if (!a.traces.empty()) WriteFileText(a.traces, dump);
  out << res.report.FormatBlock();
  return failed ? kExitPartial : kExitOk;
}

struct InspectArgs {
  std::string manifest, config, id, split = "dev";
  std::uint64_t seed = 0;
};

int CmdInspect(const InspectArgs &a, std::ostream &out, std::ostream &) {
  const Dataset d = OpenDataset(a.manifest, a.config);
  const auto it = std::find_if(d.rows.begin(), d.rows.end(),
                               [&](const ManifestRow &r) { return r.id == a.id; });
  if (it == d.rows.end())
    throw Error(ErrorCode::kUnknownId, "no utterance '" + a.id + "' in " + a.manifest);
  const FeatureMatrix raw = LoadFeatures(*it, d);
  const TransformPipeline pipe = ParsePipeline(d.config, a.split);
  Rng rng(a.seed);
  const FeatureMatrix feat = pipe.Apply(raw, rng);

  double sum = 0.0, sum_sq = 0.0;
  for (float v : feat.data()) {
    sum += v;
    sum_sq += static_cast<double>(v) * v;
  }
  const double n = static_cast<double>(feat.data().size());
  const double mean = n ? sum / n : 0.0;
  const double var = n ? std::max(0.0, sum_sq / n - mean * mean) : 0.0;

  std::string stages;
  for (const auto &s : pipe.StageNames()) stages += (stages.empty() ? "" : ",") + s;
  out << "id=" << it->id << "\n"
      << "audio=" << it->audio << "\n"
      << "n_frames=" << it->n_frames << "\n"
      << "tgt_text=" << it->tgt_text << "\n";
  if (it->src_text) out << "src_text=" << *it->src_text << "\n";
  if (it->speaker) out << "speaker=" << *it->speaker << "\n";
  out << "frames=" << feat.num_frames() << "\n"
      << "dim=" << feat.feature_dim() << "\n"
      << "split=" << a.split << "\n"
      << "pipeline=" << stages << "\n"
      << "feat_mean=" << Fixed(mean, 6) << "\n"
      << "feat_std=" << Fixed(std::sqrt(var), 6) << "\n";
  return kExitOk;
}

struct GcmvnArgs {
  std::string manifest, config, out;
};

int CmdGcmvn(const GcmvnArgs &a, std::ostream &out, std::ostream &) {
  const Dataset d = OpenDataset(a.manifest, a.config);
  std::vector<GcmvnStats> per(d.rows.size());
  std::vector<std::string> errors(d.rows.size());
  const auto count = static_cast<std::int64_t>(d.rows.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      per[i].Accumulate(LoadFeatures(d.rows[i], d));
    } catch (const std::exception &e) {
      errors[i] = e.what();
    }
  }
  for (std::size_t i = 0; i < errors.size(); ++i)
    if (!errors[i].empty())
      throw Error(ErrorCode::kInvalidArgument, d.rows[i].id + ": " + errors[i]);
  GcmvnStats total;
  for (const auto &s : per) total.Merge(s);
  DataConfig cfg = d.config;
  cfg.gcmvn = total.Finalize();
  SaveDataConfig(a.out, cfg);
  out << "frames=" << total.count() << "\n" << "dim=" << total.dim() << "\n";
  return kExitOk;
}

int ErrorExit(const Error &e) {
  switch (e.code()) {
    case ErrorCode::kPeerClosed:
    case ErrorCode::kProtocolError:
    case ErrorCode::kAgentProtocolViolation:
    case ErrorCode::kActionBudgetExceeded:
    case ErrorCode::kIoError:
      return kExitPartial;
    default:
      return kExitUsage;
  }
}

}  // namespace

int RunCli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Speech-to-text data preparation and evaluation toolkit", "s2t"};
  app.require_subcommand(1);
  app.set_config("--options-file", "", "INI/TOML file with flag values");
  int threads = 0;
  app.add_option("--threads", threads, "Worker threads (0: all CPUs)")->check(CLI::NonNegativeNumber);

  PrepArgs prep;
  auto *p = app.add_subcommand("prep", "Extract features and write manifest/config");
  p->add_option("--audio-dir", prep.job.audio_dir, "Audio directory")->required();
  p->add_option("--transcripts", prep.job.transcripts, "Transcript TSV")->required();
  p->add_option("--out", prep.job.out_dir, "Output directory")->required();
  p->add_option("--max-frames", prep.job.max_frames, "Drop utterances above this many frames")
      ->capture_default_str();
  p->add_option("--speed", prep.speeds, "Speed perturbation factors")->delimiter(',');
  p->add_flag("--pack", prep.job.pack, "Store features in features.zip");
  p->add_option("--seed", prep.job.seed, "Seed for dithering")->capture_default_str();
  p->add_option("--num-mel-bins", prep.num_mel_bins, "Mel bins")->capture_default_str();
  p->add_option("--dither", prep.dither, "Dither amplitude")->capture_default_str();

  PackArgs pack;
  auto *k = app.add_subcommand("pack", "Pack a manifest's payloads into a ZIP archive");
  k->add_option("--manifest", pack.manifest, "Input manifest")->required();
  k->add_option("--config", pack.config, "Data config (default: next to manifest)");
  k->add_option("--out", pack.out_dir, "Output directory")->required();
  k->add_option("--archive", pack.archive, "Archive file name")->capture_default_str();

  ScoreArgs score;
  auto *s = app.add_subcommand("score", "Score hypotheses against references");
  s->add_option("--refs", score.refs, "Reference lines")->required();
  s->add_option("--hyps", score.hyps, "Hypothesis lines")->required();
  s->add_flag("--wer", score.wer, "Word error rate");
  s->add_flag("--bleu", score.bleu, "BLEU (default)");
  s->add_flag("--chrf", score.chrf, "chrF");
  s->add_flag("--char", score.chr, "Character-level BLEU");
  s->add_option("--lang", score.lang, "Target language (zh/ja select --char)");

  SimulArgs simul;
  auto *m = app.add_subcommand("simul", "Simultaneous evaluation with a streaming agent");
  m->add_option("--manifest", simul.manifest, "Manifest")->required();
  m->add_option("--refs", simul.refs, "Reference lines (default: manifest tgt_text)");
  m->add_option("--agent", simul.agent, "waitk:K | exec:CMD | tcp:HOST:PORT")->required();
  m->add_option("--unit", simul.unit, "word | ms")->capture_default_str();
  m->add_option("--chunk-ms", simul.chunk_ms, "Speech chunk length")->capture_default_str();
  m->add_option("--traces", simul.traces, "Per-sentence trace output")->capture_default_str();
  m->add_option("--max-actions", simul.max_actions, "Action budget per session")
      ->capture_default_str();
  m->add_option("--lang", simul.lang, "Target language");
  m->add_flag("--char", simul.chr, "Character-level BLEU");

  InspectArgs inspect;
  auto *i = app.add_subcommand("inspect", "Summarize one utterance");
  i->add_option("--manifest", inspect.manifest, "Manifest")->required();
  i->add_option("--id", inspect.id, "Utterance id")->required();
  i->add_option("--config", inspect.config, "Data config (default: next to manifest)");
  i->add_option("--split", inspect.split, "Split whose pipeline is applied")
      ->capture_default_str();
  i->add_option("--seed", inspect.seed, "Seed for random transforms");

  GcmvnArgs gcmvn;
  auto *g = app.add_subcommand("gcmvn", "Corpus-level CMVN statistics");
  g->add_option("--manifest", gcmvn.manifest, "Manifest")->required();
  g->add_option("--config", gcmvn.config, "Base config (default: next to manifest)");
  g->add_option("--out", gcmvn.out, "Output config YAML")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  if (threads > 0) omp_set_num_threads(threads);
  try {
    if (*p) return CmdPrep(prep, out, err);
    if (*k) return CmdPack(pack, out, err);
    if (*s) return CmdScore(score, out, err);
    if (*m) return CmdSimul(simul, out, err);
    if (*i) return CmdInspect(inspect, out, err);
    if (*g) return CmdGcmvn(gcmvn, out, err);
  } catch (const Error &e) {
    err << "error: " << e.what() << "\n";
    return ErrorExit(e);
  } catch (const fs::filesystem_error &e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return kExitPartial;
  }
  return kExitUsage;
}

}  // namespace s2t
