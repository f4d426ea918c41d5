// include/s2t/scorers.h

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

#ifndef S2T_SCORERS_H_
#define S2T_SCORERS_H_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace s2t {

// ---------------------------------------------------------------------------
// WER

struct EditCounts {
  std::uint64_t substitutions = 0;
  std::uint64_t insertions = 0;
  std::uint64_t deletions = 0;

  std::uint64_t total() const { return substitutions + insertions + deletions; }
  EditCounts &operator+=(const EditCounts &o) {
    substitutions += o.substitutions;
    insertions += o.insertions;
    deletions += o.deletions;
    return *this;
  }
  bool operator==(const EditCounts &) const = default;
};

/// Unit-cost Levenshtein alignment. Among minimal alignments the backtrace
/// prefers substitution (or match), then insertion, then deletion.
EditCounts AlignTokens(std::span<const std::string> ref,
                       std::span<const std::string> hyp);

struct WerReport {
  std::uint64_t substitutions = 0;
  std::uint64_t insertions = 0;
  std::uint64_t deletions = 0;
  std::uint64_t ref_words = 0;
  double wer = 0.0;  // (S + I + D) / ref_words
};

/// Corpus WER over whitespace tokens. LengthMismatch, EmptyReference.
WerReport Wer(std::span<const std::string> refs, std::span<const std::string> hyps);
WerReport WerSerial(std::span<const std::string> refs,
                    std::span<const std::string> hyps);

// ---------------------------------------------------------------------------
// BLEU

enum class BleuTokenizer { kWord13a, kChar };
enum class BleuSmoothing { kNone, kExpFloor };

struct BleuOptions {
  BleuTokenizer tokenizer = BleuTokenizer::kWord13a;
  BleuSmoothing smoothing = BleuSmoothing::kExpFloor;
};

inline constexpr int kBleuOrder = 4;

struct BleuStats {
  std::array<std::uint64_t, kBleuOrder> matches{};
  std::array<std::uint64_t, kBleuOrder> totals{};
  std::uint64_t hyp_len = 0;
  std::uint64_t ref_len = 0;

  BleuStats &operator+=(const BleuStats &o);
  bool operator==(const BleuStats &) const = default;
};

struct BleuReport {
  double bleu = 0.0;  // 0..100
  std::array<double, kBleuOrder> precisions{};  // fractions in [0, 1]
  double brevity_penalty = 1.0;
  std::uint64_t hyp_len = 0;
  std::uint64_t ref_len = 0;
  BleuStats stats;
};

/// mteval-v13a tokenization as used for detokenized, case-sensitive BLEU.
std::string Tokenize13a(std::string_view line);
std::vector<std::string> TokenizeForBleu(std::string_view line, BleuTokenizer tok);
/// Character-level BLEU for languages written without word spacing.
BleuTokenizer TokenizerForLanguage(std::string_view lang);

BleuStats SentenceBleuStats(std::string_view ref, std::string_view hyp,
                            BleuTokenizer tok);
BleuReport BleuFromStats(const BleuStats &stats, BleuSmoothing smoothing);
/// Corpus BLEU. LengthMismatch, EmptyCorpus (no hypothesis tokens at all).
BleuReport Bleu(std::span<const std::string> refs, std::span<const std::string> hyps,
                const BleuOptions &opts = {});

// ---------------------------------------------------------------------------
// chrF

struct ChrfOptions {
  int order = 6;
  double beta = 2.0;
};

/// Per order: hypothesis n-grams, reference n-grams, clipped matches.
using ChrfStats = std::vector<std::array<std::uint64_t, 3>>;

ChrfStats SentenceChrfStats(std::string_view ref, std::string_view hyp, int order);
double ChrfFromStats(const ChrfStats &stats, double beta);
/// Corpus chrF (0..100), whitespace excluded from n-grams. Precision and
/// recall are averaged over the orders that have reference n-grams, then
/// combined into F-beta.
double Chrf(std::span<const std::string> refs, std::span<const std::string> hyps,
            const ChrfOptions &opts = {});

// ---------------------------------------------------------------------------
// Latency

/// d_i: source units consumed before target token i was emitted. Units are
/// whatever src_len is measured in (tokens, segments or milliseconds).
struct DelaySequence {
  std::vector<double> delays;
  double src_len = 0.0;

  std::size_t tgt_len() const { return delays.size(); }
  bool operator==(const DelaySequence &) const = default;
};

/// AL with tau = first i where d_i reaches |x| (|y| if never).
double AverageLagging(const DelaySequence &d);
/// DAL with d'_i = max(d_i, d'_{i-1} + 1/gamma).
double DifferentiableAverageLagging(const DelaySequence &d);

enum class LatencyRegime { kLow, kMedium, kHigh };
/// high: AL > 6, medium: 3 < AL <= 6, low: AL <= 3.
LatencyRegime RegimeForAl(double al);
std::string_view RegimeName(LatencyRegime r);

// ---------------------------------------------------------------------------
// Reports

/// Ordered metric bundle, rendered as "key=value" with three decimals.
class ScoreReport {
 public:
  using Value = std::variant<double, std::string>;

  void Set(const std::string &key, Value v);
  const Value *Get(std::string_view key) const;
  const std::vector<std::pair<std::string, Value>> &entries() const { return entries_; }

  /// One "key=value" per line.
  std::string FormatBlock() const;
  /// Space-separated "key=value" pairs on a single line.
  std::string FormatLine() const;

 private:
  std::vector<std::pair<std::string, Value>> entries_;
};

void AddToReport(ScoreReport &r, const WerReport &w);
void AddToReport(ScoreReport &r, const BleuReport &b);

}  // namespace s2t

#endif  // S2T_SCORERS_H_
