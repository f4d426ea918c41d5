// include/s2t/transforms.h

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

#ifndef S2T_TRANSFORMS_H_
#define S2T_TRANSFORMS_H_

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "s2t/data_config.h"
#include "s2t/features.h"
#include "s2t/rng.h"

namespace s2t {

enum class MaskFill { kZero, kMean };

/// Frequency and time masking; time warping is not supported.
struct SpecAugmentConfig {
  int freq_mask_param = 0;  // F: max band width in bins
  int num_freq_masks = 0;   // mF
  int time_mask_param = 0;  // T: max span in frames
  int num_time_masks = 0;   // mT
  double time_mask_p = 1.0; // cap on each span as a fraction of frames
  MaskFill fill = MaskFill::kZero;

  void Validate() const;

  static SpecAugmentConfig LB();  // F 27, mF 1, T 100, mT 1, p 1.0
  static SpecAugmentConfig LD();  // F 27, mF 2, T 100, mT 2, p 1.0
};

struct AppliedMask {
  enum class Axis { kFrequency, kTime };
  Axis axis;
  std::size_t start;
  std::size_t width;
};

/// Width ~ Uniform{0..param} (inclusive, clipped to the axis), start ~
/// Uniform{0..dim-width}. Every mask consumes two draws even at width 0.
FeatureMatrix SpecAugment(const FeatureMatrix &feat, const SpecAugmentConfig &cfg,
                          Rng &rng, std::vector<AppliedMask> *masks = nullptr);

/// An online feature transform. Implementations must be immutable after
/// construction; all randomness comes from the Rng argument.
class FeatureTransform {
 public:
  virtual ~FeatureTransform() = default;
  virtual std::string name() const = 0;
  virtual FeatureMatrix Apply(const FeatureMatrix &feat, Rng &rng) const = 0;
};

using TransformFactory = std::function<std::unique_ptr<FeatureTransform>(
    const ParamMap &params, const DataConfig &cfg)>;

class TransformRegistry {
 public:
  /// utterance_cmvn, global_cmvn, specaugment.
  static TransformRegistry WithBuiltins();

  /// Names are lowercase snake_case. DuplicateName on reuse; registering
  /// into a frozen registry is InvalidArgument.
  void Register(const std::string &name, TransformFactory factory);
  bool Contains(std::string_view name) const;
  std::vector<std::string> Names() const;

  std::unique_ptr<FeatureTransform> Create(const std::string &name,
                                           const ParamMap &params,
                                           const DataConfig &cfg) const;

  void Freeze() { frozen_ = true; }
  bool frozen() const { return frozen_; }

 private:
  std::map<std::string, TransformFactory, std::less<>> factories_;
  bool frozen_ = false;
};

/// Process-wide registry, pre-populated with the built-ins. Register custom
/// transforms at startup, then Freeze() before workers start.
TransformRegistry &DefaultTransformRegistry();

class TransformPipeline {
 public:
  TransformPipeline() = default;
  TransformPipeline(std::string split,
                    std::vector<std::shared_ptr<const FeatureTransform>> stages)
      : split_(std::move(split)), stages_(std::move(stages)) {}

  const std::string &split() const { return split_; }
  std::size_t size() const { return stages_.size(); }
  bool empty() const { return stages_.empty(); }
  std::vector<std::string> StageNames() const;

  /// Left-to-right composition.
  FeatureMatrix Apply(const FeatureMatrix &feat, Rng &rng) const;

 private:
  std::string split_;
  std::vector<std::shared_ptr<const FeatureTransform>> stages_;
};

TransformPipeline ParsePipeline(
    const DataConfig &cfg, std::string_view split,
    const TransformRegistry &registry = DefaultTransformRegistry());

inline FeatureMatrix ApplyPipeline(const TransformPipeline &p,
                                   const FeatureMatrix &feat, Rng &rng) {
  return p.Apply(feat, rng);
}

// Parameter helpers for transform factories; failures are BadParams.
int ParamInt(const ParamMap &params, const std::string &key, int fallback);
double ParamDouble(const ParamMap &params, const std::string &key, double fallback);
void RejectUnknownParams(const ParamMap &params,
                         std::initializer_list<std::string_view> known,
                         std::string_view transform);

}  // namespace s2t

#endif  // S2T_TRANSFORMS_H_
