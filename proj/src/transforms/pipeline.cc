// src/transforms/pipeline.cc

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

#include "s2t/error.h"
#include "s2t/transforms.h"

namespace s2t {

std::vector<std::string> TransformPipeline::StageNames() const {
  std::vector<std::string> names;
  for (const auto &s : stages_) names.push_back(s->name());
  return names;
}

FeatureMatrix TransformPipeline::Apply(const FeatureMatrix &feat, Rng &rng) const {
  FeatureMatrix cur = feat;
  for (const auto &stage : stages_) cur = stage->Apply(cur, rng);
  return cur;
}

TransformPipeline ParsePipeline(const DataConfig &cfg, std::string_view split,
                                const TransformRegistry &registry) {
  static const ParamMap kNoParams;
  std::vector<std::shared_ptr<const FeatureTransform>> stages;
  for (const auto &name : cfg.TransformsForSplit(split)) {
    const ParamMap *params = cfg.ParamsFor(name);
    stages.push_back(registry.Create(name, params ? *params : kNoParams, cfg));
  }
  return TransformPipeline(std::string(split), std::move(stages));
}

}  // namespace s2t
