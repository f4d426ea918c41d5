// src/transforms/registry.cc

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

#include <charconv>
#include <cmath>

#include "s2t/error.h"
#include "s2t/transforms.h"

namespace s2t {
namespace {

bool IsSnakeCase(std::string_view name) {
  if (name.empty() || !(name.front() >= 'a' && name.front() <= 'z')) return false;
  for (char c : name)
    if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_')) return false;
  return true;
}

class UtteranceCmvnTransform : public FeatureTransform {
 public:
  std::string name() const override { return "utterance_cmvn"; }
  FeatureMatrix Apply(const FeatureMatrix &feat, Rng &) const override {
    return UtteranceCmvn(feat);
  }
};

class GlobalCmvnTransform : public FeatureTransform {
 public:
  explicit GlobalCmvnTransform(CmvnMoments m) : moments_(std::move(m)) {}
  std::string name() const override { return "global_cmvn"; }
  FeatureMatrix Apply(const FeatureMatrix &feat, Rng &) const override {
    return ApplyCmvn(feat, moments_.mean, moments_.stddev);
  }

 private:
  CmvnMoments moments_;
};

class SpecAugmentTransform : public FeatureTransform {
 public:
  explicit SpecAugmentTransform(SpecAugmentConfig cfg) : cfg_(cfg) {}
  std::string name() const override { return "specaugment"; }
  FeatureMatrix Apply(const FeatureMatrix &feat, Rng &rng) const override {
    return SpecAugment(feat, cfg_, rng);
  }

 private:
  SpecAugmentConfig cfg_;
};

// Accepts the long parameter names and the short F/N/T aliases.
SpecAugmentConfig SpecAugmentFromParams(const ParamMap &params) {
  RejectUnknownParams(params,
                      {"policy", "freq_mask_param", "num_freq_masks",
                       "time_mask_param", "num_time_masks", "time_mask_p", "fill",
                       "freq_mask_F", "freq_mask_N", "time_mask_T", "time_mask_N",
                       "mask_value", "time_wrap_W", "time_warp_W"},
                      "specaugment");
  SpecAugmentConfig cfg;
  if (const auto it = params.find("policy"); it != params.end()) {
    if (it->second == "LB" || it->second == "lb") cfg = SpecAugmentConfig::LB();
    else if (it->second == "LD" || it->second == "ld") cfg = SpecAugmentConfig::LD();
    else throw Error(ErrorCode::kBadParams, "unknown SpecAugment policy '" + it->second + "'");
  }
  cfg.freq_mask_param = ParamInt(params, "freq_mask_F", cfg.freq_mask_param);
  cfg.freq_mask_param = ParamInt(params, "freq_mask_param", cfg.freq_mask_param);
  cfg.num_freq_masks = ParamInt(params, "freq_mask_N", cfg.num_freq_masks);
  cfg.num_freq_masks = ParamInt(params, "num_freq_masks", cfg.num_freq_masks);
  cfg.time_mask_param = ParamInt(params, "time_mask_T", cfg.time_mask_param);
  cfg.time_mask_param = ParamInt(params, "time_mask_param", cfg.time_mask_param);
  cfg.num_time_masks = ParamInt(params, "time_mask_N", cfg.num_time_masks);
  cfg.num_time_masks = ParamInt(params, "num_time_masks", cfg.num_time_masks);
  cfg.time_mask_p = ParamDouble(params, "time_mask_p", cfg.time_mask_p);
  for (const char *key : {"time_wrap_W", "time_warp_W"})
    if (ParamInt(params, key, 0) != 0)
      throw Error(ErrorCode::kBadParams, "time warping is not supported");
  if (const auto it = params.find("fill"); it != params.end()) {
    if (it->second == "zero") cfg.fill = MaskFill::kZero;
    else if (it->second == "mean") cfg.fill = MaskFill::kMean;
    else throw Error(ErrorCode::kBadParams, "fill must be 'zero' or 'mean'");
  }
  if (const auto it = params.find("mask_value"); it != params.end()) {
    if (ParamDouble(params, "mask_value", 0.0) != 0.0)
      throw Error(ErrorCode::kBadParams, "only a zero mask_value is supported; use fill: mean");
  }
  cfg.Validate();
  return cfg;
}

}  // namespace

int ParamInt(const ParamMap &params, const std::string &key, int fallback) {
  const auto it = params.find(key);
  if (it == params.end()) return fallback;
  const std::string &s = it->second;
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw Error(ErrorCode::kBadParams, "'" + key + "' must be an integer, got '" + s + "'");
  return v;
}

double ParamDouble(const ParamMap &params, const std::string &key, double fallback) {
  const auto it = params.find(key);
  if (it == params.end()) return fallback;
  const std::string &s = it->second;
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size() && std::isfinite(v)) return v;
  } catch (const std::exception &) {
  }
  throw Error(ErrorCode::kBadParams, "'" + key + "' must be a number, got '" + s + "'");
}

void RejectUnknownParams(const ParamMap &params,
                         std::initializer_list<std::string_view> known,
                         std::string_view transform) {
  for (const auto &[k, v] : params) {
    bool ok = false;
    for (std::string_view n : known) ok = ok || n == k;
    if (!ok)
      throw Error(ErrorCode::kBadParams, "unknown parameter '" + k + "' for " +
                                             std::string(transform));
  }
}

TransformRegistry TransformRegistry::WithBuiltins() {
  TransformRegistry r;
  r.Register("utterance_cmvn", [](const ParamMap &params, const DataConfig &) {
    RejectUnknownParams(params, {}, "utterance_cmvn");
    return std::make_unique<UtteranceCmvnTransform>();
  });
  r.Register("global_cmvn", [](const ParamMap &params, const DataConfig &cfg) {
    RejectUnknownParams(params, {}, "global_cmvn");
    if (!cfg.gcmvn)
      throw Error(ErrorCode::kBadParams, "global_cmvn needs gcmvn stats in the config");
    return std::make_unique<GlobalCmvnTransform>(*cfg.gcmvn);
  });
  r.Register("specaugment", [](const ParamMap &params, const DataConfig &) {
    return std::make_unique<SpecAugmentTransform>(SpecAugmentFromParams(params));
  });
  return r;
}

void TransformRegistry::Register(const std::string &name, TransformFactory factory) {
  if (frozen_)
    throw Error(ErrorCode::kInvalidArgument,
                "transform registry is frozen; register '" + name + "' at startup");
  if (!IsSnakeCase(name))
    throw Error(ErrorCode::kInvalidArgument,
                "transform names are lowercase snake_case, got '" + name + "'");
  if (!factory) throw Error(ErrorCode::kInvalidArgument, "null transform factory");
  if (!factories_.emplace(name, std::move(factory)).second)
    throw Error(ErrorCode::kDuplicateName, "transform '" + name + "' already registered");
}

bool TransformRegistry::Contains(std::string_view name) const {
  return factories_.find(name) != factories_.end();
}

std::vector<std::string> TransformRegistry::Names() const {
  std::vector<std::string> names;
  for (const auto &[n, f] : factories_) names.push_back(n);
  return names;
}

std::unique_ptr<FeatureTransform> TransformRegistry::Create(
    const std::string &name, const ParamMap &params, const DataConfig &cfg) const {
  const auto it = factories_.find(name);
  if (it == factories_.end())
    throw Error(ErrorCode::kUnknownTransform, "no transform named '" + name + "'");
  auto t = it->second(params, cfg);
  if (!t) throw Error(ErrorCode::kBadParams, "factory for '" + name + "' returned null");
  return t;
}

TransformRegistry &DefaultTransformRegistry() {
  static TransformRegistry registry = TransformRegistry::WithBuiltins();
  return registry;
}

}  // namespace s2t
