// include/s2t/cli.h

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

#ifndef S2T_CLI_H_
#define S2T_CLI_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "s2t/dataset.h"
#include "s2t/features.h"

namespace s2t {

inline constexpr int kExitOk = 0;
inline constexpr int kExitPartial = 1;
inline constexpr int kExitUsage = 2;

/// Corpus preparation: transcripts TSV with header columns id, audio,
/// tgt_text and optionally src_text, speaker (any order). Audio paths are
/// relative to audio_dir.
struct PrepJob {
  std::string audio_dir;
  std::string transcripts;
  std::string out_dir;
  FbankConfig fbank;
  std::uint64_t max_frames = kDefaultMaxFrames;
  bool pack = false;
  std::vector<double> speeds{1.0};
  std::uint64_t seed = 0;
};

struct PrepFailure {
  std::string id;
  std::string message;
};

struct PrepResult {
  std::vector<ManifestRow> rows;  // written to manifest.tsv
  std::size_t dropped = 0;        // over max_frames
  std::vector<PrepFailure> failures;
};

/// Writes manifest.tsv, config.yaml, prep_report.txt and either feats/*.fbank
/// or features.zip under out_dir. Outputs are byte-identical across runs for
/// the same job.
PrepResult RunPrep(const PrepJob &job);

/// "-sp0.9" style suffix; empty for factor 1.
std::string SpeedSuffix(double factor);

/// Runs the s2t command line (args exclude the program name). Data goes to
/// out, diagnostics to err.
int RunCli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace s2t

#endif  // S2T_CLI_H_
