// tests/transforms_test.cc

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

#include "doctest.h"
#include "s2t/error.h"
#include "s2t/transforms.h"
#include "oracles.h"
#include "test_util.h"

using namespace s2t;
using s2t::testing::CodeOf;
using s2t::testing::ExactMaskedFraction;
using s2t::testing::FirstOrderMaskedFraction;
using s2t::testing::Moments;
using s2t::testing::RandomMatrix;

namespace {

double ExpectedMaskedFraction(const SpecAugmentConfig &c, std::int64_t frames,
                              std::int64_t bins) {
  return ExactMaskedFraction(c.freq_mask_param, c.num_freq_masks, c.time_mask_param,
                             c.num_time_masks, c.time_mask_p, frames, bins);
}

std::size_t CountEqual(const FeatureMatrix &m, float v) {
  return static_cast<std::size_t>(std::count(m.data().begin(), m.data().end(), v));
}

class ScaleTransform : public FeatureTransform {
 public:
  explicit ScaleTransform(float k) : k_(k) {}
  std::string name() const override { return "scale"; }
  FeatureMatrix Apply(const FeatureMatrix &feat, Rng &) const override {
    FeatureMatrix out = feat;
    for (float &v : out.data()) v *= k_;
    return out;
  }

 private:
  float k_;
};

class ClipTransform : public FeatureTransform {
 public:
  explicit ClipTransform(float limit) : limit_(limit) {}
  std::string name() const override { return "clip"; }
  FeatureMatrix Apply(const FeatureMatrix &feat, Rng &) const override {
    FeatureMatrix out = feat;
    for (float &v : out.data()) v = std::clamp(v, -limit_, limit_);
    return out;
  }

 private:
  float limit_;
};

TransformFactory ClipFactory() {
  return [](const ParamMap &params, const DataConfig &) {
    RejectUnknownParams(params, {"limit"}, "clip");
    return std::make_unique<ClipTransform>(
        static_cast<float>(ParamDouble(params, "limit", 1.0)));
  };
}

}  // namespace

TEST_CASE("specaugment: no masks is the identity") {
  Rng rng(1);
  const FeatureMatrix x = RandomMatrix(50, 20, rng);
  SpecAugmentConfig cfg;
  Rng r2(2);
  CHECK(SpecAugment(x, cfg, r2) == x);
}

TEST_CASE("specaugment: one wide frequency mask is a single contiguous band") {
  Rng rng(3);
  const FeatureMatrix x = RandomMatrix(30, 16, rng, 1.0, 100.0);
  SpecAugmentConfig cfg;
  cfg.freq_mask_param = 40;
  cfg.num_freq_masks = 1;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng r(seed);
    std::vector<AppliedMask> masks;
    const FeatureMatrix y = SpecAugment(x, cfg, r, &masks);
    REQUIRE(masks.size() == 1);
    std::vector<int> masked_cols;
    for (std::size_t c = 0; c < 16; ++c) {
      bool all = true, none = true;
      for (std::size_t t = 0; t < 30; ++t) {
        all = all && y(t, c) == 0.0f;
        none = none && y(t, c) == x(t, c);
      }
      REQUIRE((all || none));
      if (all) masked_cols.push_back(static_cast<int>(c));
    }
    CHECK(masked_cols.size() == masks[0].width);
    CHECK(masks[0].width <= 16);
    for (std::size_t i = 1; i < masked_cols.size(); ++i)
      CHECK(masked_cols[i] == masked_cols[i - 1] + 1);
    if (!masked_cols.empty()) CHECK(masked_cols.front() == static_cast<int>(masks[0].start));
  }
}

TEST_CASE("specaugment: masking only overwrites cells with the fill value") {
  Rng rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t t = rng.UniformInt(1, 200), f = rng.UniformInt(1, 90);
    const FeatureMatrix x = RandomMatrix(t, f, rng, 3.0, 50.0);
    SpecAugmentConfig cfg;
    cfg.freq_mask_param = static_cast<int>(rng.UniformInt(0, 40));
    cfg.num_freq_masks = static_cast<int>(rng.UniformInt(0, 3));
    cfg.time_mask_param = static_cast<int>(rng.UniformInt(0, 150));
    cfg.num_time_masks = static_cast<int>(rng.UniformInt(0, 3));
    cfg.time_mask_p = rng.Uniform01();
    cfg.fill = rng.UniformInt(0, 1) ? MaskFill::kMean : MaskFill::kZero;
    double mean = 0;
    for (float v : x.data()) mean += v;
    const float fill = cfg.fill == MaskFill::kMean
                           ? static_cast<float>(mean / static_cast<double>(x.data().size()))
                           : 0.0f;
    std::vector<AppliedMask> masks;
    const FeatureMatrix y = SpecAugment(x, cfg, rng, &masks);
    REQUIRE(y.num_frames() == t);
    REQUIRE(y.feature_dim() == f);
    const auto cap = static_cast<std::size_t>(std::floor(cfg.time_mask_p * t));
    for (const auto &m : masks) {
      if (m.axis == AppliedMask::Axis::kFrequency) {
        CHECK(m.width <= static_cast<std::size_t>(cfg.freq_mask_param));
        CHECK(m.start + m.width <= f);
      } else {
        CHECK(m.width <= std::min<std::size_t>(cfg.time_mask_param, cap));
        CHECK(m.start + m.width <= t);
      }
    }
    for (std::size_t r = 0; r < t; ++r)
      for (std::size_t c = 0; c < f; ++c) {
        bool in_mask = false;
        for (const auto &m : masks) {
          const std::size_t i = m.axis == AppliedMask::Axis::kFrequency ? c : r;
          in_mask = in_mask || (i >= m.start && i < m.start + m.width);
        }
        if (in_mask) REQUIRE(y(r, c) == fill);
        else REQUIRE(y(r, c) == x(r, c));
      }
  }
}

TEST_CASE("specaugment: same seed gives the same masks") {
  Rng rng(5);
  const FeatureMatrix x = RandomMatrix(300, 80, rng);
  Rng a(42), b(42);
  CHECK(SpecAugment(x, SpecAugmentConfig::LD(), a) ==
        SpecAugment(x, SpecAugmentConfig::LD(), b));
}

TEST_CASE("specaugment: presets") {
  const auto lb = SpecAugmentConfig::LB();
  CHECK(lb.freq_mask_param == 27);
  CHECK(lb.num_freq_masks == 1);
  CHECK(lb.time_mask_param == 100);
  CHECK(lb.num_time_masks == 1);
  CHECK(lb.time_mask_p == 1.0);
  const auto ld = SpecAugmentConfig::LD();
  CHECK(ld.freq_mask_param == 27);
  CHECK(ld.num_freq_masks == 2);
  CHECK(ld.time_mask_param == 100);
  CHECK(ld.num_time_masks == 2);
  CHECK(ld.time_mask_p == 1.0);
}

TEST_CASE("specaugment: masked fraction matches the exact expectation") {
  struct Case {
    SpecAugmentConfig cfg;
    std::size_t frames, bins;
  };
  SpecAugmentConfig small_p = SpecAugmentConfig::LB();
  small_p.time_mask_p = 0.05;
  const std::vector<Case> cases{{SpecAugmentConfig::LB(), 1000, 80},
                                {SpecAugmentConfig::LD(), 600, 80},
                                {small_p, 400, 40}};
  for (const auto &cs : cases) {
    const FeatureMatrix ones(cs.frames, cs.bins, 1.0f);
    Rng rng(6);
    const int draws = 1500;
    double masked = 0.0;
    for (int i = 0; i < draws; ++i)
      masked += static_cast<double>(CountEqual(SpecAugment(ones, cs.cfg, rng), 0.0f));
    const double empirical = masked / (static_cast<double>(draws) * cs.frames * cs.bins);
    const double exact = ExpectedMaskedFraction(cs.cfg, cs.frames, cs.bins);
    const double bound = FirstOrderMaskedFraction(
        cs.cfg.freq_mask_param, cs.cfg.num_freq_masks, cs.cfg.time_mask_param,
        cs.cfg.num_time_masks, cs.cfg.time_mask_p, cs.frames, cs.bins);
    CHECK(empirical == doctest::Approx(exact).epsilon(0.03));
    CHECK(exact <= bound);
    CHECK(empirical <= bound * 1.2);
    CHECK(empirical >= bound * 0.8);
  }
}

TEST_CASE("specaugment: invalid parameters") {
  Rng rng(7);
  const FeatureMatrix x(10, 10, 1.0f);
  SpecAugmentConfig cfg;
  cfg.num_freq_masks = -1;
  CHECK(CodeOf([&] { SpecAugment(x, cfg, rng); }) == ErrorCode::kBadParams);
  cfg = {};
  cfg.time_mask_p = 1.5;
  CHECK(CodeOf([&] { SpecAugment(x, cfg, rng); }) == ErrorCode::kBadParams);
}

TEST_CASE("registry: custom transform resolves and duplicates are rejected") {
  TransformRegistry reg = TransformRegistry::WithBuiltins();
  CHECK(reg.Contains("utterance_cmvn"));
  CHECK(reg.Contains("global_cmvn"));
  CHECK(reg.Contains("specaugment"));
  reg.Register("clip", ClipFactory());
  CHECK(CodeOf([&] { reg.Register("clip", ClipFactory()); }) == ErrorCode::kDuplicateName);
  CHECK(CodeOf([&] { reg.Register("Clip2", ClipFactory()); }) == ErrorCode::kInvalidArgument);

  const DataConfig cfg = ReadDataConfig(
      "transforms:\n  '*': [utterance_cmvn, clip]\nclip: {limit: 0.5}\n");
  const TransformPipeline p = ParsePipeline(cfg, "dev", reg);
  CHECK(p.StageNames() == std::vector<std::string>{"utterance_cmvn", "clip"});
  Rng rng(8);
  const FeatureMatrix y = p.Apply(RandomMatrix(100, 5, rng), rng);
  for (float v : y.data()) CHECK(std::abs(v) <= 0.5f);

  reg.Freeze();
  CHECK(CodeOf([&] { reg.Register("other", ClipFactory()); }) == ErrorCode::kInvalidArgument);
  CHECK(CodeOf([&] { ParsePipeline(ReadDataConfig("transforms: [nope]\n"), "dev", reg); }) ==
        ErrorCode::kUnknownTransform);
  CHECK(CodeOf([&] {
          ParsePipeline(ReadDataConfig("transforms: [clip]\nclip: {bogus: 1}\n"), "dev", reg);
        }) == ErrorCode::kBadParams);
}

TEST_CASE("registry: doubling after CMVN gives unit-two columns") {
  TransformRegistry reg = TransformRegistry::WithBuiltins();
  reg.Register("double_it", [](const ParamMap &, const DataConfig &) {
    return std::make_unique<ScaleTransform>(2.0f);
  });
  const TransformPipeline p =
      ParsePipeline(ReadDataConfig("transforms: [utterance_cmvn, double_it]\n"), "train", reg);
  Rng rng(9);
  const FeatureMatrix x = RandomMatrix(400, 12, rng, 7.0, -3.0);
  const FeatureMatrix y = p.Apply(x, rng);
  const auto m = Moments(y);
  for (std::size_t c = 0; c < 12; ++c) {
    CHECK(m.stddev[c] == doctest::Approx(2.0).epsilon(1e-3));
    CHECK(std::abs(m.mean[c]) < 1e-5);
  }
}

TEST_CASE("pipeline: declaration order and split selection") {
  const DataConfig cfg = ReadDataConfig(
      "transforms:\n"
      "  _train: [utterance_cmvn, specaugment]\n"
      "  '*': [utterance_cmvn]\n"
      "specaugment: {policy: LD}\n");
  const auto train = ParsePipeline(cfg, "train");
  CHECK(train.size() == 2);
  CHECK(train.StageNames() == std::vector<std::string>{"utterance_cmvn", "specaugment"});
  const auto dev = ParsePipeline(cfg, "dev");
  CHECK(dev.StageNames() == std::vector<std::string>{"utterance_cmvn"});

  const DataConfig train_only = ReadDataConfig("transforms:\n  _train: [specaugment]\n");
  CHECK(ParsePipeline(train_only, "dev").empty());
  CHECK(ParsePipeline(train_only, "train").size() == 1);

  const DataConfig reversed = ReadDataConfig("transforms: [specaugment, utterance_cmvn]\n");
  CHECK(ParsePipeline(reversed, "test").StageNames() ==
        std::vector<std::string>{"specaugment", "utterance_cmvn"});
}

TEST_CASE("pipeline: empty is the identity") {
  const auto p = ParsePipeline(ReadDataConfig("input_feat_per_channel: 80\n"), "train");
  CHECK(p.empty());
  Rng rng(10);
  const FeatureMatrix x = RandomMatrix(20, 8, rng);
  CHECK(ApplyPipeline(p, x, rng) == x);
}

TEST_CASE("pipeline: referentially transparent given input and seed") {
  const DataConfig cfg = ReadDataConfig(
      "transforms: [utterance_cmvn, specaugment]\nspecaugment: {policy: LD}\n");
  const auto p = ParsePipeline(cfg, "train");
  Rng rng(11);
  const FeatureMatrix x = RandomMatrix(500, 80, rng);
  Rng a(123), b(123), c(124);
  const FeatureMatrix ya = p.Apply(x, a);
  CHECK(ya == p.Apply(x, b));
  CHECK_FALSE(ya == p.Apply(x, c));
}

TEST_CASE("pipeline: zero-fill masks after CMVN move column means off zero") {
  const DataConfig cmvn_only = ReadDataConfig("transforms: [utterance_cmvn]\n");
  const DataConfig both = ReadDataConfig(
      "transforms: [utterance_cmvn, specaugment]\n"
      "specaugment: {time_mask_param: 100, num_time_masks: 1}\n");
  Rng rng(12);
  const FeatureMatrix x = RandomMatrix(300, 10, rng, 4.0, 20.0);
  Rng r0(1);
  const auto m0 = Moments(ParsePipeline(cmvn_only, "train").Apply(x, r0));
  for (double mu : m0.mean) CHECK(std::abs(mu) < 1e-5);

  // Find a seed whose time mask is non-empty; masked rows become zero and
  // the remaining rows no longer sum to zero.
  const auto p = ParsePipeline(both, "train");
  bool moved = false;
  for (std::uint64_t seed = 0; seed < 20 && !moved; ++seed) {
    Rng r(seed);
    const FeatureMatrix y = p.Apply(x, r);
    const std::size_t zeros = CountEqual(y, 0.0f);
    if (zeros == 0) continue;
    const auto m = Moments(y);
    for (double mu : m.mean) moved = moved || std::abs(mu) > 1e-4;
  }
  CHECK(moved);
}

TEST_CASE("transform params: short aliases and time warp rejection") {
  const DataConfig ok = ReadDataConfig(
      "transforms: [specaugment]\n"
      "specaugment: {freq_mask_F: 5, freq_mask_N: 1, time_mask_T: 0, time_mask_N: 0}\n");
  CHECK(ParsePipeline(ok, "train").size() == 1);
  const DataConfig warp = ReadDataConfig(
      "transforms: [specaugment]\nspecaugment: {time_warp_W: 5}\n");
  CHECK(CodeOf([&] { ParsePipeline(warp, "train"); }) == ErrorCode::kBadParams);
  const DataConfig bad_policy = ReadDataConfig(
      "transforms: [specaugment]\nspecaugment: {policy: XX}\n");
  CHECK(CodeOf([&] { ParsePipeline(bad_policy, "train"); }) == ErrorCode::kBadParams);
  const DataConfig no_stats = ReadDataConfig("transforms: [global_cmvn]\n");
  CHECK(CodeOf([&] { ParsePipeline(no_stats, "train"); }) == ErrorCode::kBadParams);
}

TEST_CASE("global_cmvn uses the configured statistics") {
  const DataConfig cfg = ReadDataConfig(
      "transforms: [global_cmvn]\ngcmvn: {mean: [1.0, 2.0], std: [2.0, 0.5]}\n");
  FeatureMatrix x(2, 2);
  x(0, 0) = 3; x(0, 1) = 2; x(1, 0) = -1; x(1, 1) = 3;
  Rng rng(0);
  const FeatureMatrix y = ParsePipeline(cfg, "dev").Apply(x, rng);
  CHECK(y(0, 0) == doctest::Approx(1.0));
  CHECK(y(0, 1) == doctest::Approx(0.0));
  CHECK(y(1, 0) == doctest::Approx(-1.0));
  CHECK(y(1, 1) == doctest::Approx(2.0));
  FeatureMatrix wrong(2, 3);
  CHECK(CodeOf([&] { ParsePipeline(cfg, "dev").Apply(wrong, rng); }) ==
        ErrorCode::kDimensionMismatch);
}
