// tests/features_test.cc

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
#include <cfloat>
#include <cmath>

#include "doctest.h"
#include "s2t/audio.h"
#include "s2t/error.h"
#include "s2t/features.h"
#include "test_util.h"

using namespace s2t;
using s2t::testing::CodeOf;
using s2t::testing::Moments;
using s2t::testing::RandomMatrix;
using s2t::testing::ReadData;

namespace {

Waveform Noise(std::size_t n, std::uint64_t seed, double amp = 0.1) {
  Rng rng(seed);
  Waveform w;
  w.samples.resize(n);
  for (float &v : w.samples) v = static_cast<float>(amp * rng.Gauss());
  return w;
}

double MaxAbsDiff(const FeatureMatrix &a, const FeatureMatrix &b) {
  double m = 0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    m = std::max(m, std::abs(static_cast<double>(a.data()[i]) - b.data()[i]));
  return m;
}

}  // namespace

TEST_CASE("frame_count") {
  const FbankConfig cfg;
  CHECK(FrameCount(16000, cfg, 16000) == 98);
  CHECK(FrameCount(399, cfg, 16000) == 0);
  CHECK(FrameCount(400, cfg, 16000) == 1);
  CHECK(FrameCount(559, cfg, 16000) == 1);
  CHECK(FrameCount(560, cfg, 16000) == 2);
  CHECK(FrameCount(0, cfg, 16000) == 0);
  FbankConfig loose;
  loose.snip_edges = false;
  CHECK(FrameCount(16000, loose, 16000) == 100);
  CHECK(FrameCount(79, loose, 16000) == 0);
  CHECK(FrameCount(80, loose, 16000) == 1);
  CHECK(FrameCount(8000, cfg, 8000) == 98);
}

TEST_CASE("frame_count grows by at most one frame per shift") {
  const FbankConfig cfg;
  for (std::size_t n = 400; n < 6000; ++n) {
    const auto d = FrameCount(n, cfg, 16000) - FrameCount(n - 160, cfg, 16000);
    CHECK((d == 0 || d == 1));
  }
}

TEST_CASE("fbank config validation") {
  FbankConfig c;
  c.num_mel_bins = 0;
  CHECK(CodeOf([&] { c.Validate(); }) == ErrorCode::kInvalidArgument);
  c = {};
  c.frame_shift_ms = 30;
  CHECK(CodeOf([&] { c.Validate(); }) == ErrorCode::kInvalidArgument);
  c = {};
  c.log_floor = 0;
  CHECK(CodeOf([&] { c.Validate(); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("logmel_fbank: one second at 16 kHz is 98 x 80") {
  const FeatureMatrix f = LogMelFbank(SynthSine(440, 1.0, 16000, 0.5));
  CHECK(f.num_frames() == 98);
  CHECK(f.feature_dim() == 80);
  for (float v : f.data()) CHECK(std::isfinite(v));
}

TEST_CASE("logmel_fbank: too short") {
  Waveform w;
  w.samples.assign(399, 0.1f);
  CHECK(CodeOf([&] { LogMelFbank(w); }) == ErrorCode::kAudioTooShort);
}

TEST_CASE("logmel_fbank: silence sits at the log floor") {
  Waveform w;
  w.samples.assign(16000, 0.0f);
  const FeatureMatrix f = LogMelFbank(w);
  const double want = std::log(1.1921e-7);
  CHECK(want == doctest::Approx(-15.94).epsilon(1e-3));
  for (float v : f.data()) CHECK(v == doctest::Approx(want).epsilon(1e-6));
}

TEST_CASE("logmel_fbank: 1 kHz tone peaks in the bin whose triangle covers 1 kHz") {
  const FeatureMatrix f = LogMelFbank(SynthSine(1000, 1.0, 16000, 0.5));
  // Mel bank edges from the scale definition alone.
  const auto mel = [](double hz) { return 1127.0 * std::log(1.0 + hz / 700.0); };
  const double lo = mel(20.0), hi = mel(8000.0), delta = (hi - lo) / 81.0;
  std::size_t first = 0;
  for (std::size_t t = 2; t + 2 < f.num_frames(); ++t) {
    const auto row = f.Row(t);
    const auto arg = static_cast<std::size_t>(std::max_element(row.begin(), row.end()) - row.begin());
    if (t == 2) first = arg;
    CHECK(arg == first);
  }
  const double m = mel(1000.0);
  CHECK(lo + first * delta < m);
  CHECK(m < lo + (first + 2) * delta);
}

TEST_CASE("logmel_fbank: scaling by c shifts cells by 2 ln c") {
  const Waveform w = Noise(8000, 5, 0.2);
  for (double c : {0.5, 3.0}) {
    Waveform s = w;
    for (float &v : s.samples) v = static_cast<float>(v * c);
    const FeatureMatrix a = LogMelFbank(w), b = LogMelFbank(s);
    const double floor = std::log(1.1921e-7) + 1.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) {
      if (a.data()[i] <= floor || b.data()[i] <= floor) continue;
      CHECK(b.data()[i] - a.data()[i] == doctest::Approx(2 * std::log(c)).epsilon(1e-3));
    }
  }
}

TEST_CASE("logmel_fbank: matches the reference Kaldi-compliant implementation") {
  const Waveform w = DecodeAudio(ReadData("fbank_ref.wav"));
  struct Case {
    const char *file;
    FbankConfig cfg;
  };
  FbankConfig povey;
  FbankConfig hamming;
  hamming.num_mel_bins = 40;
  hamming.window = WindowType::kHamming;
  hamming.snip_edges = false;
  FbankConfig hanning;
  hanning.num_mel_bins = 23;
  hanning.window = WindowType::kHanning;
  hanning.remove_dc_offset = false;
  hanning.preemphasis = 0.0;
  for (const Case &c : {Case{"fbank_ref_povey.feats", povey},
                        Case{"fbank_ref_hamming_nosnip.feats", hamming},
                        Case{"fbank_ref_hanning_nodc.feats", hanning}}) {
    CAPTURE(c.file);
    const FeatureMatrix want = ParseFeatures(ReadData(c.file));
    const FeatureMatrix got = LogMelFbank(w, c.cfg);
    REQUIRE(got.num_frames() == want.num_frames());
    REQUIRE(got.feature_dim() == want.feature_dim());
    CHECK(MaxAbsDiff(got, want) < 2e-3);
  }
}

TEST_CASE("logmel_fbank: deterministic, parallel equals serial") {
  const Waveform w = Noise(24000, 9);
  FbankConfig cfg;
  CHECK(LogMelFbank(w, cfg) == LogMelFbank(w, cfg));
  cfg.dither = 1.0;
  cfg.dither_seed = 42;
  const FbankComputer comp(cfg, 16000);
  const FeatureMatrix a = comp.Compute(w);
  CHECK(a == comp.ComputeSerial(w));
  CHECK(a == comp.Compute(w));
  cfg.dither_seed = 43;
  CHECK_FALSE(a == FbankComputer(cfg, 16000).Compute(w));
}

TEST_CASE("mel banks follow the triangle definition") {
  const FbankConfig cfg;
  const auto banks = ComputeMelBanks(cfg, 16000, 512);
  REQUIRE(banks.size() == 80);
  const auto mel = [](double hz) { return 1127.0 * std::log(1.0 + hz / 700.0); };
  const double lo = mel(20.0), delta = (mel(8000.0) - lo) / 81.0;
  for (std::size_t m = 0; m < banks.size(); ++m) {
    const double l = lo + m * delta, c = l + delta, r = c + delta;
    CHECK(banks[m].center_mel == doctest::Approx(c));
    for (int k = 0; k < 256; ++k) {
      const double x = mel(16000.0 * k / 512);
      double want = 0;
      if (x > l && x < r) want = x <= c ? (x - l) / (c - l) : (r - x) / (r - c);
      const int idx = k - banks[m].first_bin;
      const double got = idx >= 0 && idx < static_cast<int>(banks[m].weights.size())
                             ? banks[m].weights[idx]
                             : 0.0;
      CHECK(got == doctest::Approx(want).epsilon(1e-9));
    }
  }
}

TEST_CASE("utterance_cmvn: degenerate inputs") {
  FeatureMatrix one(1, 5);
  for (std::size_t c = 0; c < 5; ++c) one(0, c) = static_cast<float>(c * 3.5);
  const FeatureMatrix a = UtteranceCmvn(one);
  for (float v : a.data()) CHECK(v == 0.0f);
  const FeatureMatrix b = UtteranceCmvn(FeatureMatrix(20, 4, 7.25f));
  for (float v : b.data()) CHECK(v == 0.0f);
}

TEST_CASE("utterance_cmvn: standardizes, is idempotent, parallel equals serial") {
  Rng rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t t = 2 + rng.UniformInt(0, 300);
    const FeatureMatrix m = RandomMatrix(t, 80, rng, 4.0, -3.0);
    const FeatureMatrix n = UtteranceCmvn(m);
    CHECK(n == UtteranceCmvnSerial(m));
    const auto mo = Moments(n);
    for (std::size_t c = 0; c < 80; ++c) {
      CHECK(std::abs(mo.mean[c]) < 1e-5);
      CHECK(std::abs(mo.stddev[c] - 1.0) < 1e-4);
    }
    const FeatureMatrix twice = UtteranceCmvn(n);
    for (std::size_t i = 0; i < n.data().size(); ++i)
      CHECK(std::abs(twice.data()[i] - n.data()[i]) < 1e-4);
  }
}

TEST_CASE("gcmvn") {
  Rng rng(31);
  const FeatureMatrix a = RandomMatrix(57, 12, rng, 2.0, 1.0);
  const FeatureMatrix b = RandomMatrix(33, 12, rng, 6.0, -4.0);

  SUBCASE("normalizing the accumulated matrix zeroes its column means") {
    GcmvnStats s;
    s.Accumulate(a);
    const CmvnMoments mo = s.Finalize();
    const auto m = Moments(ApplyCmvn(a, mo.mean, mo.stddev));
    for (double v : m.mean) CHECK(std::abs(v) < 1e-5);
  }
  SUBCASE("accumulation order does not matter") {
    GcmvnStats ab, ba;
    ab.Accumulate(a);
    ab.Accumulate(b);
    ba.Accumulate(b);
    ba.Accumulate(a);
    const auto x = ab.Finalize(), y = ba.Finalize();
    CHECK(ab.count() == 90);
    for (std::size_t c = 0; c < 12; ++c) {
      CHECK(x.mean[c] == doctest::Approx(y.mean[c]).epsilon(1e-12));
      CHECK(x.stddev[c] == doctest::Approx(y.stddev[c]).epsilon(1e-12));
    }
  }
  SUBCASE("merge of separate accumulators equals the concatenated moments") {
    GcmvnStats sa, sb;
    sa.Accumulate(a);
    sb.Accumulate(b);
    sa.Merge(sb);
    FeatureMatrix cat(a.num_frames() + b.num_frames(), 12);
    std::copy(a.data().begin(), a.data().end(), cat.data().begin());
    std::copy(b.data().begin(), b.data().end(), cat.data().begin() + a.data().size());
    const auto want = Moments(cat);
    const auto got = sa.Finalize();
    for (std::size_t c = 0; c < 12; ++c) {
      CHECK(std::abs(got.mean[c] - want.mean[c]) < 1e-9);
      CHECK(std::abs(got.stddev[c] - want.stddev[c]) < 1e-9);
    }
  }
  SUBCASE("errors and the std floor") {
    GcmvnStats s;
    CHECK(CodeOf([&] { s.Finalize(); }) == ErrorCode::kEmptyStats);
    s.Accumulate(a);
    CHECK(CodeOf([&] { s.Accumulate(FeatureMatrix(3, 5)); }) ==
          ErrorCode::kDimensionMismatch);
    GcmvnStats flat;
    flat.Accumulate(FeatureMatrix(10, 3, 2.0f));
    const CmvnMoments fm = flat.Finalize();
    for (double v : fm.stddev) CHECK(v >= kCmvnStdFloor);
  }
}

TEST_CASE("feature files") {
  Rng rng(41);
  const FeatureMatrix m = RandomMatrix(7, 3, rng);
  const auto bytes = SerializeFeatures(m);
  REQUIRE(bytes.size() == 16 + 7 * 3 * 4);
  CHECK(std::string(bytes.begin(), bytes.begin() + 8) == "S2TFBANK");
  CHECK(bytes[8] == 7);
  CHECK(bytes[12] == 3);
  CHECK(IsFeatureFile(bytes));
  CHECK(ParseFeatures(bytes) == m);
  auto cut = bytes;
  cut.pop_back();
  CHECK(CodeOf([&] { ParseFeatures(cut); }) == ErrorCode::kCorruptStream);
  const std::vector<std::uint8_t> other{'R', 'I', 'F', 'F', 0, 0, 0, 0};
  CHECK(CodeOf([&] { ParseFeatures(other); }) == ErrorCode::kUnsupportedFormat);
}
